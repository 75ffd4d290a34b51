"""
有界次数多项式试探解

未知张量的每个分量取 x 变量上次数 ≤ D 的单项式线性组合，把线性残差映射
作用到每个基元素上，按分量通分后逐单项式取系数，得到 QQ 上的齐次线性方程组，
零空间即解空间。
"""

import itertools
import logging
from fractions import Fraction
from typing import Callable, List, Sequence, Union

from sympy import Matrix, QQ

from .chart import Chart
from .tensor import Slot, TensorField

logger = logging.getLogger('PWLab.linsolve')

Residual = Union[TensorField, Sequence[TensorField]]


def x_monomials(chart: Chart, degree: int) -> List:
    """x 上次数 ≤ degree 的单项式，grlex 升序"""
    monos = []
    for d in range(degree + 1):
        for exps in sorted(
            (e for e in itertools.product(range(d + 1), repeat=chart.n) if sum(e) == d),
            reverse=True,
        ):
            term = chart.one
            for i, e in enumerate(exps):
                term = term * chart.x(i) ** e
            monos.append(term)
    return monos


def polynomial_basis(chart: Chart, slots: Sequence[Slot], degree: int,
                     antisymmetric: bool = False, **meta) -> List[TensorField]:
    """试探基：每个（独立）分量 × 每个单项式"""
    slots = tuple(slots)
    monos = x_monomials(chart, degree)
    shape = [s.dim for s in slots]
    if antisymmetric:
        positions = [(i, j) for i in range(shape[0]) for j in range(shape[1]) if i < j]
    else:
        positions = list(itertools.product(*[range(d) for d in shape]))
    basis = []
    for pos in positions:
        for mono in monos:
            def fn(*idx, pos=pos, mono=mono):
                if idx == pos:
                    return mono
                if antisymmetric and idx == pos[::-1]:
                    return -mono
                return 0
            basis.append(TensorField.from_function(chart, slots, fn, **meta))
    return basis


def _as_list(r: Residual) -> List[TensorField]:
    return [r] if isinstance(r, TensorField) else list(r)


def solve_linear_ansatz(chart: Chart, basis: List[TensorField],
                        residual: Callable[[TensorField], Residual]) -> List[TensorField]:
    """返回解空间的一组基（线性组合系数为有理数）"""
    images = [_as_list(residual(b)) for b in basis]
    if not basis:
        return []

    # 每个 (残差序号, 分量位置) 一组方程
    rows: List[list] = []
    positions = [(r, k) for r, t in enumerate(images[0]) for k in range(len(t.components))]
    for r, k in positions:
        comps = [img[r].components[k] for img in images]
        lcm = None
        for c in comps:
            lcm = c.denom if lcm is None else lcm.lcm(c.denom)
        numerators = [c.numer * lcm.exquo(c.denom) for c in comps]
        monoms = sorted({m for num in numerators for m in num.monoms() if num})
        for m in monoms:
            rows.append([QQ.to_sympy(num.get(m, QQ.zero)) for num in numerators])

    logger.debug(f"试探解: {len(basis)} 个未知量, {len(rows)} 个方程")
    if not rows:
        null = [[Fraction(int(i == j)) for i in range(len(basis))] for j in range(len(basis))]
    else:
        null = [[Fraction(int(v.p), int(v.q)) for v in vec] for vec in Matrix(rows).nullspace()]

    solutions = []
    for vec in null:
        total = basis[0].scale(0)
        for coeff, b in zip(vec, basis):
            if coeff:
                total = total + b.scale(coeff)
        solutions.append(total)
    return solutions
