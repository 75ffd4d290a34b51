"""底流形上的仿射 / 射影微积分"""

from .connection import (
    AffineConnection, covariant_derivative, is_special, levi_civita_symbol, log_gradient,
    projective_change, projective_rescale, require_special, special_part, thomas_parameters,
)
from .curvature import (
    Curvature, WeylCotton, curvature, first_bianchi, is_projectively_flat, is_symmetric,
    ricci_flat_residual, riemann_tensor, weyl_cotton, weyl_traces,
)
from .solutions import (
    KIND_WEIGHTS, ProjectiveSolution, SolutionKind, affine_bivector_residuals, bivector_nu,
    integrability_residuals, kind_slots, make_solution, prolong, prolonged_residuals,
    solution_residual, solve_solutions, symmetry_companions, transform_solution,
)
from .duality import dual_kind, dualize_lowdim

__all__ = [
    'AffineConnection',
    'covariant_derivative',
    'is_special',
    'levi_civita_symbol',
    'log_gradient',
    'projective_change',
    'projective_rescale',
    'require_special',
    'special_part',
    'thomas_parameters',
    'Curvature',
    'WeylCotton',
    'curvature',
    'first_bianchi',
    'is_projectively_flat',
    'is_symmetric',
    'ricci_flat_residual',
    'riemann_tensor',
    'weyl_cotton',
    'weyl_traces',
    'KIND_WEIGHTS',
    'ProjectiveSolution',
    'SolutionKind',
    'affine_bivector_residuals',
    'bivector_nu',
    'integrability_residuals',
    'kind_slots',
    'make_solution',
    'prolong',
    'prolonged_residuals',
    'solution_residual',
    'solve_solutions',
    'symmetry_companions',
    'transform_solution',
    'dual_kind',
    'dualize_lowdim',
]
