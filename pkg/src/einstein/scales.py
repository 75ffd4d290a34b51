"""
PW 几何上的近 Einstein 尺度

σ̃ 是 M̃ 上共形权 1 的标量；(D̃_(a D̃_b) + P̃_ab)_0 σ̃ = 0。
两个提升：σ̃_− = π*σ（Ricci 平直尺度），σ̃_+ = ξ^A p_A（Euler 型场，ξ·W = 0）。
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional

from ..errors import GradingError, PreconditionError, SlotMismatchError
from ..projective import (
    AffineConnection, ProjectiveSolution, SolutionKind, covariant_derivative, integrability_residuals,
    require_special, solution_residual, weyl_cotton,
)
from ..projective.solutions import euler_residual, ricciflat_residual
from ..pwext import PWGeometry
from ..symcore import Chart, Scalar, TensorField, down, polynomial_basis, solve_linear_ansatz, up
from ..symcore.tensor import Basis

logger = logging.getLogger('PWLab.einstein')


@dataclass(frozen=True)
class ConformalScale:
    chart: Chart
    value: Scalar
    cweight: int = 1

    @classmethod
    def of(cls, chart: Chart, value) -> "ConformalScale":
        return cls(chart, chart.parse(value) if isinstance(value, str) else chart.coerce(value))

    def __add__(self, other: "ConformalScale") -> "ConformalScale":
        return ConformalScale(self.chart, self.value + other.value, self.cweight)

    def is_zero(self) -> bool:
        return not self.value.numer

    def as_tensor(self) -> TensorField:
        return TensorField.scalar(self.chart, self.value, cweight=self.cweight)


def aes_residual(P: PWGeometry, sigma: ConformalScale) -> TensorField:
    """(∇_a∇_b σ̃ + P̃_ab σ̃)_0，迹去掉 (1/2n) g·g^cd(…)"""
    g, S = P.metric, P.schouten
    H = P.hessian(sigma.value)
    raw = TensorField.from_function(P.chart, g.slots, lambda a, b: H[a, b] + S[a, b] * sigma.value)
    trace = P.metric_trace(raw) * P.chart.const(1, P.dim)
    return raw - g.scale(trace)


def lift_minus(P: PWGeometry, sol: ProjectiveSolution) -> ConformalScale:
    """σ̃_− = π*σ"""
    if sol.kind != SolutionKind.RICCIFLAT:
        raise SlotMismatchError(f"lift_minus 需要 ricciflat 解，得到 {sol.kind.value}")
    if not solution_residual(P.source, sol).is_zero():
        raise PreconditionError("base-residual", "σ 不满足 Ricci 平直尺度方程")
    return ConformalScale(P.chart, sol.data.value())


def lift_plus(P: PWGeometry, sol: ProjectiveSolution) -> ConformalScale:
    """σ̃_+ = ξ^A p_A"""
    if sol.kind != SolutionKind.EULER:
        raise SlotMismatchError(f"lift_plus 需要 euler 解，得到 {sol.kind.value}")
    D = P.source
    if not solution_residual(D, sol).is_zero():
        raise PreconditionError("base-residual", "ξ 不满足 Euler 方程")
    if not integrability_residuals(D, sol)["xi.W"].is_zero():
        raise PreconditionError("xi.W", "ξ^D W_DA^C_B ≠ 0")
    chart, xi = P.chart, sol.data
    return ConformalScale(chart, sum((xi[a] * chart.p(a) for a in range(P.n)), chart.zero))


def key_display_parts(P: PWGeometry, xi: TensorField) -> Dict[str, TensorField]:
    """σ̃_+ 的残差拆成两块（适配标架）：HV 块 (Dξ)_0，HH 块 p_E(DDξ + δPξ − ξW)"""
    D, chart, n = P.source, P.chart, P.n
    tf = euler_residual(D, xi)  # [C][A] = (D_C ξ^A)_0
    DD = covariant_derivative(D, covariant_derivative(D, xi))  # [A][B][E]
    S = P.base_curvature.schouten
    W = weyl_cotton(D).weyl
    half = chart.const(1, 2)

    def mixed(a, b):
        if a < n <= b:
            return tf[a, b - n]
        if b < n <= a:
            return tf[b, a - n]
        return 0

    def block(A, B):
        value = chart.zero
        for e in range(n):
            term = DD[A, B, e]
            if e == B:
                term += sum((S[A, c] * xi[c] for c in range(n)), chart.zero)
            term -= sum((xi[c] * W[c, B, e, A] for c in range(n)), chart.zero)
            value += term * chart.p(e)
        return value

    def horizontal(a, b):
        if a < n and b < n:
            return half * (block(a, b) + block(b, a))
        return 0

    slots = P.metric.slots
    return {
        "Dxi0": TensorField.from_function(chart, slots, mixed, basis=Basis.ADAPTED),
        "DDxi+Pxi-xiW": TensorField.from_function(chart, slots, horizontal, basis=Basis.ADAPTED),
    }


def lie_derivative_scale(P: PWGeometry, sigma: ConformalScale) -> Scalar:
    """L_k σ̃ = k(σ̃) − σ̃"""
    return P.lie_derivative_density(P.k_vector, sigma.value, sigma.cweight)


def kk_hessian(P: PWGeometry, sigma: ConformalScale) -> Scalar:
    """k^a k^b ∇_a ∇_b σ̃"""
    k, H, N = P.k_vector, P.hessian(sigma.value), P.dim
    total = P.chart.zero
    for a in range(N):
        for b in range(N):
            if k[a].numer and k[b].numer:
                total += k[a] * k[b] * H[a, b]
    return total


def scale_eigen_residuals(P: PWGeometry, sigma: ConformalScale) -> Dict[str, Scalar]:
    """(L_k − 1)(L_k + 1)σ̃ 与 L_k²σ̃ − k^ak^b∇∇σ̃ − σ̃"""
    once = lie_derivative_scale(P, sigma)
    twice = lie_derivative_scale(P, ConformalScale(P.chart, once, sigma.cweight))
    return {
        "characteristic": twice - sigma.value,
        "Lk2": twice - kk_hessian(P, sigma) - sigma.value,
    }


def rescaled_schouten_trace(P: PWGeometry, sigma: ConformalScale) -> Scalar:
    """2n σ̃² 倍的 ĝ = σ̃^{-2} g 的 Schouten 迹系数：σ̃Δσ̃ + Jσ̃² − n|∇σ̃|²"""
    s = sigma.value
    laplace = P.metric_trace(P.hessian(s))
    grad = P.raise_index(P.gradient(s))
    norm = sum((grad[a] * P.d(s, a) for a in range(P.dim)), P.chart.zero)
    J = P.metric_trace(P.schouten)
    return s * laplace + J * s * s - P.n * norm


@dataclass(frozen=True)
class ScaleDecomposition:
    plus: ConformalScale
    minus: ConformalScale
    xi: Optional[ProjectiveSolution]
    sigma: Optional[ProjectiveSolution]


def decompose_scale(P: PWGeometry, sigma: ConformalScale) -> ScaleDecomposition:
    """按 p 次数拆成 σ̃_+ + σ̃_−，并抽出底数据逐个复核"""
    if not aes_residual(P, sigma).is_zero():
        raise PreconditionError("aes-residual", "σ̃ 不是近 Einstein 尺度")
    chart, n = P.chart, P.n
    t = sigma.as_tensor()
    degrees = t.p_degrees()
    if any(d > 1 for d in degrees):
        raise GradingError(f"近 Einstein 尺度出现 p 的 {max(degrees)} 次项")
    plus = ConformalScale(chart, t.grade_in_p(1).value())
    minus = ConformalScale(chart, t.grade_in_p(0).value())

    xi_sol = None
    if not plus.is_zero():
        xi = TensorField.from_function(chart, (up(n),), lambda a: chart.dp(plus.value, a), pweight=-1)
        xi_sol = ProjectiveSolution(SolutionKind.EULER, xi)
        if not solution_residual(P.source, xi_sol).is_zero():
            raise PreconditionError("base-residual", "抽出的 ξ 不满足 Euler 方程")
        if not integrability_residuals(P.source, xi_sol)["xi.W"].is_zero():
            raise PreconditionError("xi.W", "抽出的 ξ 不满足 ξ·W = 0")
    sigma_sol = None
    if not minus.is_zero():
        sigma_sol = ProjectiveSolution(SolutionKind.RICCIFLAT, TensorField.scalar(chart, minus.value, pweight=1))
        if not solution_residual(P.source, sigma_sol).is_zero():
            raise PreconditionError("base-residual", "抽出的 σ 不满足 Ricci 平直尺度方程")

    for part, sign in ((plus, 1), (minus, -1)):
        if lie_derivative_scale(P, part) != sign * part.value:
            raise PreconditionError("lie-eigen", "L_k σ̃_± ≠ ±σ̃_±")
    return ScaleDecomposition(plus, minus, xi_sol, sigma_sol)


@dataclass(frozen=True)
class ScaleSolutions:
    euler: List[ProjectiveSolution]
    ricciflat: List[ProjectiveSolution]

    @property
    def dimensions(self) -> Dict[str, int]:
        return {"euler": len(self.euler), "ricciflat": len(self.ricciflat)}


def solve_scales(D: AffineConnection, degree: int) -> ScaleSolutions:
    """有界次数多项式试探：Euler 场（含 ξ·W = 0）与 Ricci 平直尺度"""
    require_special(D, "solve_scales")
    chart, n = D.chart, D.n
    W = weyl_cotton(D).weyl

    def euler_map(xi: TensorField):
        xi_w = TensorField.from_function(
            chart, (down(n), up(n), down(n)),
            lambda a, c, b: sum((xi[d] * W[d, a, c, b] for d in range(n)), chart.zero),
        )
        return [euler_residual(D, xi), xi_w]

    euler = solve_linear_ansatz(chart, polynomial_basis(chart, (up(n),), degree, pweight=-1), euler_map)
    ricci = solve_linear_ansatz(chart, polynomial_basis(chart, (), degree, pweight=1),
                                lambda s: ricciflat_residual(D, s))
    logger.debug(f"solve_scales: euler {len(euler)} 维, ricciflat {len(ricci)} 维")
    return ScaleSolutions(
        euler=[ProjectiveSolution(SolutionKind.EULER, t) for t in euler],
        ricciflat=[ProjectiveSolution(SolutionKind.RICCIFLAT, t) for t in ricci],
    )
