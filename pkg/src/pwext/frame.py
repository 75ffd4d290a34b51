"""
适配标架中的 Christoffel 符号与曲率：闭式（由射影数据给出）与内禀计算（由 g 直接求）两条路径

标架 Christoffel Γ̃_abc = g(e_b, ∇_{e_a} e_c)；
标架 Riemann R̃_abcd = g(e_c, R(e_a, e_b) e_d)。
"""

import itertools
from dataclasses import dataclass
from typing import Dict, List, Tuple

from ..projective import covariant_derivative
from ..symcore import Slot, Space, TensorField, down_t
from ..symcore.tensor import Basis
from .geometry import PWGeometry


def _frame_tensor(P: PWGeometry, rank: int, fn) -> TensorField:
    return TensorField.from_function(P.chart, (down_t(P.n),) * rank, fn, basis=Basis.ADAPTED)


def _split(P: PWGeometry, a: int) -> Tuple[bool, int]:
    """(是否水平, 底指标)"""
    return (a < P.n, a if a < P.n else a - P.n)


# ---------- Christoffel ----------

def frame_christoffels(P: PWGeometry) -> TensorField:
    """闭式：(H_A,V_B,H_C) ↦ Γ_A^B_C，(H_A,H_B,H_C) ↦ R_BC^E_A p_E，(H_A,H_B,V_C) ↦ −Γ_A^C_B"""
    D, chart = P.source, P.chart
    R = P.base_curvature.riemann
    n = P.n

    def comp(a, b, c):
        ha, A = _split(P, a)
        hb, B = _split(P, b)
        hc, C = _split(P, c)
        if not ha:
            return 0
        if not hb and hc:
            return D.G(A, B, C)
        if hb and hc:
            return sum((R[B, C, e, A] * chart.p(e) for e in range(n)), chart.zero)
        if hb and not hc:
            return -D.G(A, C, B)
        return 0

    return _frame_tensor(P, 3, comp)


def structure_functions(P: PWGeometry) -> TensorField:
    """[e_a, e_b] = c_ab^d e_d，槽位 [a][b][d]"""
    N = P.dim
    vectors = [P.frame_vector(a) for a in range(N)]
    table: Dict[Tuple[int, int], List] = {}
    for a, b in itertools.product(range(N), repeat=2):
        br = P.bracket(vectors[a], vectors[b])
        table[(a, b)] = [
            sum((P.coframe[d][mu] * br[mu] for mu in range(N) if br[mu].numer), P.chart.zero)
            for d in range(N)
        ]
    return _frame_tensor(P, 3, lambda a, b, d: table[(a, b)][d])


def frame_christoffels_koszul(P: PWGeometry) -> TensorField:
    """标架度量为常数时的 Koszul 公式：½(g([a,c],b) + g([b,a],c) − g([c,b],a))"""
    c = structure_functions(P)
    G, N = P.frame_metric, P.dim
    half = P.chart.const(1, 2)

    def low(a, b, x):
        """g([e_a, e_b], e_x)"""
        return sum((c[a, b, d] * G[d, x] for d in range(N) if G[d, x].numer), P.chart.zero)

    return _frame_tensor(P, 3, lambda a, b, cc: half * (low(a, cc, b) + low(b, a, cc) - low(cc, b, a)))


def frame_christoffels_intrinsic(P: PWGeometry) -> TensorField:
    """由坐标 Levi-Civita 直接求 g(e_b, ∇_{e_a} e_c)"""
    E, N, g, G = P.frame, P.dim, P.metric, P.christoffel
    chart = P.chart
    cache = {}

    def nabla(a, c):
        if (a, c) not in cache:
            out = []
            for s in range(N):
                value = chart.zero
                for m in range(N):
                    if not E[a][m].numer:
                        continue
                    value += E[a][m] * P.d(E[c][s], m)
                    for v in range(N):
                        if E[c][v].numer and G[s, m, v].numer:
                            value += E[a][m] * G[s, m, v] * E[c][v]
                out.append(value)
            cache[(a, c)] = out
        return cache[(a, c)]

    def comp(a, b, c):
        vec = nabla(a, c)
        total = chart.zero
        for r in range(N):
            if not E[b][r].numer:
                continue
            for s in range(N):
                if g[r, s].numer and vec[s].numer:
                    total += E[b][r] * g[r, s] * vec[s]
        return total

    return _frame_tensor(P, 3, comp)


# ---------- 曲率字典 ----------

def _riemann_like_closed(P: PWGeometry, K: TensorField, hhhh) -> TensorField:
    """T1 + T2 块取自 K_AB^C_D，全水平块由 hhhh(A,B,C,D) 给出"""

    def comp(a, b, c, d):
        ha, A = _split(P, a)
        hb, B = _split(P, b)
        hc, C = _split(P, c)
        hd, Dd = _split(P, d)
        if ha and hb:
            if hc and hd:
                return hhhh(A, B, C, Dd)
            if not hc and hd:
                return K[A, B, C, Dd]
            if hc and not hd:
                return -K[A, B, Dd, C]
            return 0
        if hc and hd:
            if not ha and hb:
                return K[C, Dd, A, B]
            if ha and not hb:
                return -K[C, Dd, B, A]
        return 0

    return _frame_tensor(P, 4, comp)


def riemann_closed(P: PWGeometry) -> TensorField:
    """R̃ 由 R 与 (D_A R_CD^E_B − D_B R_CD^E_A) p_E 给出"""
    chart, n = P.chart, P.n
    R = P.base_curvature.riemann
    DR = covariant_derivative(P.source, R)  # [A][C][D][E][B]

    def hhhh(A, B, C, Dd):
        return sum(((DR[A, C, Dd, e, B] - DR[B, C, Dd, e, A]) * chart.p(e) for e in range(n)), chart.zero)

    return _riemann_like_closed(P, R, hhhh)


def weyl_closed(P: PWGeometry) -> TensorField:
    """W̃ 由 W 与 Cotton 张量给出"""
    chart, n = P.chart, P.n
    wc = P.base_weyl_cotton
    W, Y = wc.weyl, wc.cotton
    DW = covariant_derivative(P.source, W)

    def hhhh(A, B, C, Dd):
        value = sum(((DW[A, C, Dd, e, B] - DW[B, C, Dd, e, A]) * chart.p(e) for e in range(n)), chart.zero)
        return value + chart.p(C) * Y[Dd, A, B] - chart.p(Dd) * Y[C, A, B]

    return _riemann_like_closed(P, W, hhhh)


def schouten_closed(P: PWGeometry) -> TensorField:
    """P̃ = χχ P：只有水平-水平分量"""
    Pb = P.base_curvature.schouten

    def comp(a, b):
        ha, A = _split(P, a)
        hb, B = _split(P, b)
        return Pb[A, B] if ha and hb else 0

    return _frame_tensor(P, 2, comp)


def cotton_closed(P: PWGeometry) -> TensorField:
    """Ỹ = χχχ Y"""
    Y = P.base_weyl_cotton.cotton

    def comp(c, a, b):
        hc, C = _split(P, c)
        ha, A = _split(P, a)
        hb, B = _split(P, b)
        return Y[C, A, B] if ha and hb and hc else 0

    return _frame_tensor(P, 3, comp)


@dataclass(frozen=True)
class CurvatureDictionary:
    """两条路径的结果，全部在适配标架中"""
    riemann: TensorField
    weyl: TensorField
    schouten: TensorField
    cotton: TensorField
    riemann_intrinsic: TensorField
    weyl_intrinsic: TensorField
    schouten_intrinsic: TensorField
    cotton_intrinsic: TensorField

    def mismatches(self) -> Dict[str, TensorField]:
        """闭式 − 内禀，只保留非零项"""
        out = {}
        for name in ("riemann", "weyl", "schouten", "cotton"):
            diff = getattr(self, name) - getattr(self, f"{name}_intrinsic")
            if not diff.is_zero():
                out[name] = diff
        return out


def curvature_dictionary(P: PWGeometry) -> CurvatureDictionary:
    return CurvatureDictionary(
        riemann=riemann_closed(P),
        weyl=weyl_closed(P),
        schouten=schouten_closed(P),
        cotton=cotton_closed(P),
        riemann_intrinsic=P.to_frame(P.riemann_lowered),
        weyl_intrinsic=P.to_frame(P.weyl),
        schouten_intrinsic=P.to_frame(P.schouten),
        cotton_intrinsic=P.to_frame(P.cotton),
    )


def walker_residual(P: PWGeometry, K: TensorField) -> TensorField:
    """K(V_i, e_b, e_c, V_j)，槽位 [i][b][c][j]，i、j 只取垂直方向"""
    n = P.n
    vertical = Slot(Space.COTANGENT_MT, n)
    return TensorField.from_function(
        P.chart, (vertical, down_t(n), down_t(n), vertical),
        lambda i, b, c, j: K[n + i, b, c, n + j],
        basis=Basis.ADAPTED,
    )
