"""
底流形曲率：Riemann、Ricci、射影 Schouten、射影 Weyl 与 Cotton

约定 R_AB^C_D v^D = 2 D_[A D_B] v^C，即
R_AB^C_D = ∂_A Γ_B^C_D − ∂_B Γ_A^C_D + Γ_A^C_E Γ_B^E_D − Γ_B^C_E Γ_A^E_D。
"""

import itertools
from dataclasses import dataclass
from typing import List

from ..errors import DimensionError
from ..symcore import TensorField, down, kron, up
from .connection import AffineConnection, covariant_derivative, require_special


@dataclass(frozen=True)
class Curvature:
    riemann: TensorField   # [A][B][C][D] = R_AB^C_D
    ricci: TensorField     # [A][B] = Ric_AB = R_CA^C_B
    schouten: TensorField  # P = Ric/(n−1)


@dataclass(frozen=True)
class WeylCotton:
    weyl: TensorField      # [A][B][C][D] = W_AB^C_D
    cotton: TensorField    # [C][A][B] = Y_CAB = D_A P_BC − D_B P_AC


def riemann_tensor(D: AffineConnection) -> TensorField:
    n, chart = D.n, D.chart
    G = D.G

    def comp(a, b, c, d):
        value = chart.dx(G(b, c, d), a) - chart.dx(G(a, c, d), b)
        for e in range(n):
            value += G(a, c, e) * G(b, e, d) - G(b, c, e) * G(a, e, d)
        return value

    return TensorField.from_function(chart, (down(n), down(n), up(n), down(n)), comp)


def curvature(D: AffineConnection) -> Curvature:
    """(R, Ric, P)"""
    n = D.n
    if n < 2:
        raise DimensionError(f"曲率需要 n ≥ 2，得到 {n}")
    riemann = riemann_tensor(D)
    ricci = riemann.contract(0, 2)
    schouten = ricci.scale(D.chart.const(1, n - 1))
    return Curvature(riemann, ricci, schouten)


def ricci_flat_residual(D: AffineConnection) -> TensorField:
    """Ricci 平直判定的残差就是 Ric 本身"""
    return curvature(D).ricci


def weyl_cotton(D: AffineConnection) -> WeylCotton:
    """W = R + P_AD δ_B^C − P_BD δ_A^C；Y_CAB = 2 D_[A P_B]C"""
    require_special(D, "射影 Weyl / Cotton 张量")
    n, chart = D.n, D.chart
    curv = curvature(D)
    R, P = curv.riemann, curv.schouten

    weyl = TensorField.from_function(
        chart, R.slots,
        lambda a, b, c, d: R[a, b, c, d] + P[a, d] * kron(b, c) - P[b, d] * kron(a, c),
    )
    DP = covariant_derivative(D, P)  # [A][B][C] = D_A P_BC
    cotton = TensorField.from_function(
        chart, (down(n),) * 3,
        lambda c, a, b: DP[a, b, c] - DP[b, a, c],
    )
    return WeylCotton(weyl, cotton)


def weyl_traces(W: TensorField) -> List[TensorField]:
    """W 的全部缩并（上指标与每个下指标）"""
    return [W.contract(k, 2) for k in (0, 1, 3)]


def is_projectively_flat(D: AffineConnection) -> bool:
    """n ≥ 3 看 W，n = 2 看 Y"""
    wc = weyl_cotton(D)
    return wc.weyl.is_zero() and (D.n > 2 or wc.cotton.is_zero())


def first_bianchi(R: TensorField) -> TensorField:
    """R_[AB^C_D] 的循环和，无挠时为零"""
    return TensorField.from_function(
        R.chart, R.slots,
        lambda a, b, c, d: R[a, b, c, d] + R[b, d, c, a] + R[d, a, c, b],
    )


def is_symmetric(T: TensorField) -> bool:
    n = T.slots[0].dim
    return all(T[a, b] == T[b, a] for a, b in itertools.combinations(range(n), 2))
