"""近 Einstein 尺度及其两种提升"""

from .scales import (
    ConformalScale, ScaleDecomposition, ScaleSolutions, aes_residual, decompose_scale,
    key_display_parts, kk_hessian, lie_derivative_scale, lift_minus, lift_plus,
    rescaled_schouten_trace, scale_eigen_residuals, solve_scales,
)

__all__ = [
    'ConformalScale',
    'ScaleDecomposition',
    'ScaleSolutions',
    'aes_residual',
    'decompose_scale',
    'key_display_parts',
    'kk_hessian',
    'lie_derivative_scale',
    'lift_minus',
    'lift_plus',
    'rescaled_schouten_trace',
    'scale_eigen_residuals',
    'solve_scales',
]
