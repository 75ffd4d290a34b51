"""精确标量域与张量运算"""

from .chart import Chart, Scalar, exact_equal, get_chart, is_zero, to_fraction, total_p_degree
from .parser import parse_polynomial
from .tensor import (
    Basis, Parity, Slot, Space, TensorField,
    down, down_t, kron, stack, up, up_t,
)
from .serialize import format_polynomial, format_scalar, format_tensor
from .linsolve import polynomial_basis, solve_linear_ansatz, x_monomials

__all__ = [
    'Chart',
    'Scalar',
    'exact_equal',
    'get_chart',
    'is_zero',
    'to_fraction',
    'total_p_degree',
    'parse_polynomial',
    'Basis',
    'Parity',
    'Slot',
    'Space',
    'TensorField',
    'down',
    'down_t',
    'kron',
    'stack',
    'up',
    'up_t',
    'format_polynomial',
    'format_scalar',
    'format_tensor',
    'polynomial_basis',
    'solve_linear_ansatz',
    'x_monomials',
]
