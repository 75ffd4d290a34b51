"""
k、μ 与标架的性质检查

每个函数返回残差张量（或残差字典），全零即性质成立。
"""

from dataclasses import dataclass
from typing import Dict

from ..errors import DimensionError
from ..symcore import Parity, Scalar, Slot, Space, TensorField, down_t, up_t
from ..symcore.tensor import Basis
from .frame import _split, curvature_dictionary, frame_christoffels_intrinsic, structure_functions, walker_residual
from .geometry import PWGeometry


@dataclass(frozen=True)
class KReport:
    """k 的三个方程与 μ 的特征值作用"""
    conformal_killing: TensorField
    homothety: TensorField
    null: Scalar
    mu_action: TensorField

    def residuals(self) -> Dict[str, TensorField]:
        null = TensorField.scalar(self.homothety.chart, self.null)
        return {
            "Dk-mu-g": self.conformal_killing,
            "Lk.g-2g": self.homothety,
            "g(k,k)": null,
            "mu.e-+e": self.mu_action,
        }

    def ok(self) -> bool:
        return all(r.is_zero() for r in self.residuals().values())


def k_properties(P: PWGeometry) -> KReport:
    g, n, N = P.metric, P.n, P.dim
    Dk = P.covd(P.k_form)
    mu = P.mu
    conformal_killing = TensorField.from_function(
        P.chart, g.slots, lambda a, b: Dk[a, b] - mu[a, b] - g[a, b]
    )
    homothety = P.lie_metric(P.k_vector) - g * 2

    # μ^a_b e^b − (±1) e^a，H 取 +1，V 取 −1
    mu_up = P.raise_first(mu)
    E = P.frame

    def action(a, r):
        sign = 1 if a < n else -1
        value = sum((mu_up[r, b] * E[a][b] for b in range(N) if E[a][b].numer), P.chart.zero)
        return value - sign * E[a][r]

    mu_action = TensorField.from_function(
        P.chart, (Slot(Space.COTANGENT_MT, N), up_t(n)), action
    )
    return KReport(
        conformal_killing=conformal_killing,
        homothety=homothety,
        null=P.inner(P.k_vector, P.k_vector),
        mu_action=mu_action,
    )


def frame_commutators(P: PWGeometry) -> TensorField:
    """结构函数与 [V_A, H_B] = Γ_B^A_C V_C、[H_A, H_B] = R_AB^C_D p_C V_D、[V, V] = 0 之差"""
    D, chart, n = P.source, P.chart, P.n
    R = P.base_curvature.riemann

    def expected(a, b, d):
        if d < n:
            return 0
        ha, A = _split(P, a)
        hb, B = _split(P, b)
        E = d - n
        if ha and hb:
            return sum((R[A, B, c, E] * chart.p(c) for c in range(n)), chart.zero)
        if not ha and hb:
            return D.G(B, A, E)
        if ha and not hb:
            return -D.G(A, B, E)
        return 0

    c = structure_functions(P)
    return c - TensorField.from_function(chart, c.slots, expected, basis=Basis.ADAPTED)


def vertical_totally_geodetic(P: PWGeometry) -> TensorField:
    """g(V_C, ∇_{V_A} V_B)，槽位 [A][C][B]"""
    n = P.n
    G = frame_christoffels_intrinsic(P)
    vertical = Slot(Space.COTANGENT_MT, n)
    return TensorField.from_function(
        P.chart, (vertical,) * 3, lambda a, c, b: G[n + a, n + c, n + b], basis=Basis.ADAPTED
    )


def k_geodesic_shearfree(P: PWGeometry) -> TensorField:
    """(k^c ∇_c k^[a) k^b]"""
    k, N = P.k_vector, P.dim
    Dk = P.covd(k)
    acc = [
        sum((k[c] * Dk[c, a] for c in range(N) if k[c].numer), P.chart.zero)
        for a in range(N)
    ]
    half = P.chart.const(1, 2)
    return TensorField.from_function(
        P.chart, (up_t(P.n), up_t(P.n)),
        lambda a, b: half * (acc[a] * k[b] - acc[b] * k[a]),
    )


def k_twist(P: PWGeometry) -> TensorField:
    """k_[a ∇_b k_c]，非零即 k 扭转"""
    kf = P.k_form
    return kf.tensor(P.covd(kf)).symmetrize((0, 1, 2), Parity.ANTISYM).with_meta(symmetries=())


def k_twisting(P: PWGeometry) -> bool:
    return not k_twist(P).is_zero()


def mu_coordinates(P: PWGeometry) -> TensorField:
    """μ 与 μ(∂p_A, ∂x^B) = δ_A^B 的坐标形式之差"""
    n = P.n

    def expected(a, b):
        if a >= n > b:
            return 1 if a - n == b else 0
        if b >= n > a:
            return -1 if b - n == a else 0
        return 0

    return P.mu - TensorField.from_function(P.chart, (down_t(n), down_t(n)), expected)


def walker_conditions(P: PWGeometry) -> Dict[str, TensorField]:
    """R̃ 与 W̃ 在两个垂直向量上的限制（内禀计算）"""
    dictionary = curvature_dictionary(P)
    return {
        "riemann": walker_residual(P, dictionary.riemann_intrinsic),
        "weyl": walker_residual(P, dictionary.weyl_intrinsic),
    }


@dataclass(frozen=True)
class EinsteinReport:
    trace_free_ricci: TensorField
    ricci: TensorField

    @property
    def is_einstein(self) -> bool:
        return self.trace_free_ricci.is_zero()

    @property
    def is_ricci_flat(self) -> bool:
        return self.ricci.is_zero()

    def ok(self) -> bool:
        """Einstein 必然 Ricci 平直"""
        return not self.is_einstein or self.is_ricci_flat


def einstein_check(P: PWGeometry) -> EinsteinReport:
    g, ric = P.metric, P.ricci
    factor = P.scalar_curvature * P.chart.const(1, P.dim)
    return EinsteinReport(
        trace_free_ricci=TensorField.from_function(
            P.chart, g.slots, lambda a, b: ric[a, b] - factor * g[a, b]
        ),
        ricci=ric,
    )


def weyl_cotton_only(P: PWGeometry) -> TensorField:
    """n = 2：W̃ 与只含 Cotton 的全水平块 p_C Y_DAB − p_D Y_CAB 之差"""
    if P.n != 2:
        raise DimensionError(f"只在 n = 2 时 W ≡ 0，得到 n = {P.n}")
    Y = P.base_weyl_cotton.cotton
    chart = P.chart

    def comp(a, b, c, d):
        if not all(x < 2 for x in (a, b, c, d)):
            return 0
        return chart.p(c) * Y[d, a, b] - chart.p(d) * Y[c, a, b]

    W = P.to_frame(P.weyl)
    return W - TensorField.from_function(chart, W.slots, comp, basis=Basis.ADAPTED)
