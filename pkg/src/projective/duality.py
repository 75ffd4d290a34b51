"""
低维对偶（ε_{12..n} = 1 的常数体积符号）

n = 2：ξ^A ↔ α_A = ξ^B ε_BA，w^AB ↔ σ = ½ w^AB ε_AB
n = 3：w^AB ↔ α_A = ½ w^BC ε_BCA
"""

from ..errors import DimensionError, PreconditionError
from ..symcore import TensorField, down, up
from .connection import AffineConnection
from .solutions import KIND_WEIGHTS, ProjectiveSolution, SolutionKind, make_solution

_DUALS = {
    2: {
        SolutionKind.EULER: SolutionKind.KILLING,
        SolutionKind.KILLING: SolutionKind.EULER,
        SolutionKind.BIVECTOR: SolutionKind.RICCIFLAT,
        SolutionKind.RICCIFLAT: SolutionKind.BIVECTOR,
    },
    3: {
        SolutionKind.BIVECTOR: SolutionKind.KILLING,
        SolutionKind.KILLING: SolutionKind.BIVECTOR,
    },
}


def dual_kind(n: int, kind: SolutionKind) -> SolutionKind:
    if n not in _DUALS:
        raise DimensionError(f"低维对偶只在 n ∈ {{2, 3}} 定义，得到 n = {n}")
    if kind not in _DUALS[n]:
        raise PreconditionError("dual-kind", f"n = {n} 时 {kind.value} 没有对偶")
    return _DUALS[n][kind]


def dualize_lowdim(D: AffineConnection, s: ProjectiveSolution) -> ProjectiveSolution:
    """往返 dualize∘dualize 为恒等"""
    n, chart = D.n, D.chart
    target = dual_kind(n, s.kind)
    t = s.data
    weight = KIND_WEIGHTS[target]

    if n == 2:
        if s.kind == SolutionKind.EULER:
            data = TensorField.from_function(chart, (down(2),), lambda a: -t[1] if a == 0 else t[0], pweight=weight)
        elif s.kind == SolutionKind.KILLING:
            data = TensorField.from_function(chart, (up(2),), lambda a: t[1] if a == 0 else -t[0], pweight=weight)
        elif s.kind == SolutionKind.BIVECTOR:
            data = TensorField.scalar(chart, t[0, 1], pweight=weight)
        else:
            sigma = t.value()
            return make_solution(chart, target, [[0, sigma], [-sigma, 0]])
    else:
        # (1,2,3) 的循环排列
        cyc = {0: (1, 2), 1: (2, 0), 2: (0, 1)}
        if s.kind == SolutionKind.BIVECTOR:
            data = TensorField.from_function(chart, (down(3),), lambda a: t[cyc[a]], pweight=weight)
        else:
            def comp(b, c):
                for a, pair in cyc.items():
                    if pair == (b, c):
                        return t[a]
                    if pair == (c, b):
                        return -t[a]
                return 0
            return make_solution(chart, target, [[comp(b, c) for c in range(3)] for b in range(3)])
    return ProjectiveSolution(target, data)
