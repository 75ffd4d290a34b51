"""
底流形上的超定方程：残差、可积条件、延拓与射影变换规则

六类解：Euler 型场 ξ^A(−1)、Ricci 平直尺度 σ(1)、双向量 w^AB(−2)、
Killing 1-形式 α_A(2)、射影对称 v^A、仿射对称 v^A。
密度以平凡化后的标量表示，权记在 pweight 上。
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Tuple

from ..errors import DimensionError, PreconditionError, SlotMismatchError, WeightMismatchError
from ..symcore import Chart, Scalar, TensorField, down, kron, polynomial_basis, solve_linear_ansatz, up
from ..symcore.tensor import Parity
from .connection import (
    AffineConnection, covariant_derivative, levi_civita_symbol, log_gradient,
    projective_rescale, require_special,
)
from .curvature import curvature, weyl_cotton

logger = logging.getLogger('PWLab.projective')


class SolutionKind(str, Enum):
    EULER = "euler"
    RICCIFLAT = "ricciflat"
    BIVECTOR = "bivector"
    KILLING = "killing"
    PROJECTIVE = "projective-symmetry"
    AFFINE = "affine-symmetry"


KIND_WEIGHTS = {
    SolutionKind.EULER: -1,
    SolutionKind.RICCIFLAT: 1,
    SolutionKind.BIVECTOR: -2,
    SolutionKind.KILLING: 2,
    SolutionKind.PROJECTIVE: 0,
    SolutionKind.AFFINE: 0,
}


def kind_slots(kind: SolutionKind, n: int) -> tuple:
    if kind == SolutionKind.RICCIFLAT:
        return ()
    if kind == SolutionKind.BIVECTOR:
        return (up(n), up(n))
    if kind == SolutionKind.KILLING:
        return (down(n),)
    return (up(n),)


@dataclass(frozen=True)
class ProjectiveSolution:
    """底方程的一个候选解，prolongation 存放 φ、ψ、β、ν 等伴随量"""
    kind: SolutionKind
    data: TensorField
    prolongation: Dict[str, TensorField] = field(default_factory=dict)

    def __post_init__(self):
        n = self.data.chart.n
        if self.data.slots != kind_slots(self.kind, n):
            raise SlotMismatchError(f"{self.kind.value} 的槽位不符: {self.data.slots}")
        if self.data.pweight != KIND_WEIGHTS[self.kind]:
            raise WeightMismatchError(
                f"{self.kind.value} 的射影权应为 {KIND_WEIGHTS[self.kind]}，得到 {self.data.pweight}"
            )
        if not self.data.depends_only_on_x():
            raise PreconditionError("base-tensor", "底流形上的解只能依赖 x")
        if self.kind == SolutionKind.BIVECTOR and not (self.data + self.data.permute((1, 0))).is_zero():
            raise PreconditionError("antisymmetric", "双向量必须反对称")

    @property
    def chart(self) -> Chart:
        return self.data.chart

    @property
    def weight(self) -> int:
        return self.data.pweight


def make_solution(chart: Chart, kind, components) -> ProjectiveSolution:
    """components 为嵌套列表（字符串或数），标量直接给一个值"""
    kind = SolutionKind(kind)
    slots = kind_slots(kind, chart.n)
    weight = KIND_WEIGHTS[kind]
    if not slots:
        value = chart.parse(components) if isinstance(components, str) else chart.coerce(components)
        data = TensorField.scalar(chart, value, pweight=weight)
    else:
        data = TensorField.from_nested(chart, slots, components, pweight=weight)
    if kind == SolutionKind.BIVECTOR:
        data = data.with_meta(symmetries=(((0, 1), Parity.ANTISYM),))
    return ProjectiveSolution(kind, data)


# ---------- 单个方程 ----------

def _trace_free_dv(D: AffineConnection, T: TensorField) -> Tuple[TensorField, TensorField]:
    """(D_C T^A, D_P T^P)"""
    DT = covariant_derivative(D, T)
    return DT, DT.contract(0, 1)


def euler_residual(D: AffineConnection, xi: TensorField) -> TensorField:
    """D_C ξ^A − (1/n) δ_C^A D_P ξ^P"""
    n = D.n
    DT, div = _trace_free_dv(D, xi)
    third = D.chart.const(1, n)
    return TensorField.from_function(
        D.chart, DT.slots, lambda c, a: DT[c, a] - third * kron(c, a) * div.value(),
        pweight=xi.pweight,
    )


def second_derivative(D: AffineConnection, sigma: TensorField) -> TensorField:
    """[B][A] = D_B D_A σ"""
    return covariant_derivative(D, covariant_derivative(D, sigma))


def ricciflat_residual(D: AffineConnection, sigma: TensorField) -> TensorField:
    """D_(A D_B) σ + P_AB σ"""
    P = curvature(D).schouten
    DD = second_derivative(D, sigma)
    half = D.chart.const(1, 2)
    s = sigma.value()
    return TensorField.from_function(
        D.chart, DD.slots,
        lambda a, b: half * (DD[a, b] + DD[b, a]) + half * (P[a, b] + P[b, a]) * s,
        pweight=sigma.pweight,
    )


def bivector_nu(D: AffineConnection, w: TensorField) -> TensorField:
    """ν^A = (1/(n−1)) D_C w^CA"""
    n = D.n
    if n < 2:
        raise DimensionError("双向量方程需要 n ≥ 2")
    return covariant_derivative(D, w).contract(0, 1).scale(D.chart.const(1, n - 1))


def bivector_first_order(D: AffineConnection, w: TensorField) -> TensorField:
    """D_C w^AB − δ_C^A ν^B + δ_C^B ν^A"""
    Dw = covariant_derivative(D, w)
    nu = bivector_nu(D, w)
    return TensorField.from_function(
        D.chart, Dw.slots,
        lambda c, a, b: Dw[c, a, b] - kron(c, a) * nu[b] + kron(c, b) * nu[a],
        pweight=w.pweight,
    )


def bivector_second_order(D: AffineConnection, w: TensorField, nu: TensorField) -> TensorField:
    """D_A ν^B + P_AC w^CB (+ n ≥ 3 时的 W 项)"""
    n, chart = D.n, D.chart
    P = curvature(D).schouten
    Dnu = covariant_derivative(D, nu)
    W = weyl_cotton(D).weyl if n > 2 else None
    coeff = chart.const(1, 2 * (n - 2)) if n > 2 else None

    def comp(a, b):
        value = Dnu[a, b]
        for c in range(n):
            value += P[a, c] * w[c, b]
        if W is not None:
            for c in range(n):
                for d in range(n):
                    value += coeff * w[c, d] * W[c, d, b, a]
        return value

    return TensorField.from_function(chart, Dnu.slots, comp, pweight=w.pweight)


def bivector_residual(D: AffineConnection, w: TensorField) -> TensorField:
    """n ≥ 3 为一阶方程；n = 2 时一阶部分恒为零，改用二阶条件"""
    if D.n == 2:
        return bivector_second_order(D, w, bivector_nu(D, w))
    return bivector_first_order(D, w)


def killing_residual(D: AffineConnection, alpha: TensorField) -> TensorField:
    """D_(A α_B)"""
    return covariant_derivative(D, alpha).symmetrize((0, 1))


def projective_symmetry_residual(D: AffineConnection, v: TensorField) -> TensorField:
    """(D_(A D_B) v^C + P_AB v^C + v^D W_D(A^C_B))_0"""
    n, chart = D.n, D.chart
    require_special(D, "射影对称方程")
    P = curvature(D).schouten
    W = weyl_cotton(D).weyl
    DD = covariant_derivative(D, covariant_derivative(D, v))
    half = chart.const(1, 2)

    def raw(a, b, c):
        value = half * (DD[a, b, c] + DD[b, a, c]) + half * (P[a, b] + P[b, a]) * v[c]
        for d in range(n):
            value += half * v[d] * (W[d, a, c, b] + W[d, b, c, a])
        return value

    T = TensorField.from_function(chart, DD.slots, raw)
    tr = T.contract(1, 2)  # T_BD^D
    factor = chart.const(1, n + 1)
    return TensorField.from_function(
        chart, T.slots,
        lambda a, b, c: T[a, b, c] - factor * (kron(a, c) * tr[b] + kron(b, c) * tr[a]),
    )


def affine_symmetry_residual(D: AffineConnection, v: TensorField) -> TensorField:
    """D_A D_B v^C + v^D R_DA^C_B"""
    n = D.n
    R = curvature(D).riemann
    DD = covariant_derivative(D, covariant_derivative(D, v))

    def comp(a, b, c):
        value = DD[a, b, c]
        for d in range(n):
            value += v[d] * R[d, a, c, b]
        return value

    return TensorField.from_function(D.chart, DD.slots, comp)


_RESIDUALS = {
    SolutionKind.EULER: euler_residual,
    SolutionKind.RICCIFLAT: ricciflat_residual,
    SolutionKind.BIVECTOR: bivector_residual,
    SolutionKind.KILLING: killing_residual,
    SolutionKind.PROJECTIVE: projective_symmetry_residual,
    SolutionKind.AFFINE: affine_symmetry_residual,
}


def solution_residual(D: AffineConnection, s: ProjectiveSolution) -> TensorField:
    """零张量当且仅当 s 满足其方程"""
    if s.data.chart != D.chart:
        raise SlotMismatchError("解与联络不在同一坐标图上")
    if s.kind != SolutionKind.PROJECTIVE and s.kind != SolutionKind.AFFINE:
        require_special(D, f"{s.kind.value} 方程")
    return _RESIDUALS[s.kind](D, s.data)


# ---------- 可积条件 ----------

def _sym_pairs(T: TensorField) -> TensorField:
    """对 (0,2) 与 (1,3) 两组槽位对称化"""
    return T.symmetrize((0, 2)).symmetrize((1, 3))


def bivector_curvature_condition(D: AffineConnection, w: TensorField, K: TensorField) -> TensorField:
    """w^B(A K_B(C^D)_E)，槽位 [A][C][D][E]"""
    n = D.n

    def comp(a, c, d, e):
        value = D.chart.zero
        for b in range(n):
            value += w[b, a] * K[b, c, d, e]
        return value

    raw = TensorField.from_function(D.chart, (up(n), down(n), up(n), down(n)), comp)
    return _sym_pairs(raw)


def _needs_weyl(kind: SolutionKind, n: int) -> bool:
    return kind in (SolutionKind.EULER, SolutionKind.BIVECTOR) or (kind == SolutionKind.KILLING and n == 3)


def integrability_residuals(D: AffineConnection, s: ProjectiveSolution,
                            W: Optional[TensorField] = None) -> Dict[str, TensorField]:
    """各类解除主方程外需要满足的曲率条件；W 可由调用方预先算好传入"""
    n = D.n
    out: Dict[str, TensorField] = {}
    if W is None and _needs_weyl(s.kind, n):
        W = weyl_cotton(D).weyl
    if s.kind == SolutionKind.EULER:
        xi = s.data
        out["xi.W"] = TensorField.from_function(
            D.chart, (down(n), up(n), down(n)),
            lambda a, c, b: sum((xi[d] * W[d, a, c, b] for d in range(n)), D.chart.zero),
        )
        out["W.xi"] = TensorField.from_function(
            D.chart, (down(n), down(n), up(n)),
            lambda a, b, c: sum((W[a, b, c, d] * xi[d] for d in range(n)), D.chart.zero),
        )
    elif s.kind == SolutionKind.BIVECTOR:
        out["w.W"] = bivector_curvature_condition(D, s.data, W)
    elif s.kind == SolutionKind.KILLING and n == 3:
        eps = levi_civita_symbol(D.chart, upper=True)
        alpha = s.data

        def comp(a, c, d, e):
            value = D.chart.zero
            for f in range(n):
                for b in range(n):
                    if eps[f, b, a] and alpha[f].numer:
                        value += alpha[f] * eps[f, b, a] * W[b, c, d, e]
            return value

        raw = TensorField.from_function(D.chart, (up(n), down(n), up(n), down(n)), comp)
        out["alpha.eps.W"] = _sym_pairs(raw)
    return out


def affine_bivector_residuals(D: AffineConnection, w: TensorField) -> Dict[str, TensorField]:
    """仿射情形的平行双向量：D_C w^AB = 0 且 w^B(A R_B(C^D)_E) = 0"""
    return {
        "Dw": covariant_derivative(D, w),
        "w.R": bivector_curvature_condition(D, w, curvature(D).riemann),
    }


# ---------- 延拓 ----------

def symmetry_companions(D: AffineConnection, v: TensorField) -> Dict[str, TensorField]:
    """φ_A^B、ψ、β_A"""
    n, chart = D.n, D.chart
    Dv = covariant_derivative(D, v)
    div = Dv.contract(0, 1)
    inv_n = chart.const(1, n)
    phi = TensorField.from_function(
        chart, Dv.slots, lambda a, b: Dv[a, b] - inv_n * kron(a, b) * div.value()
    )
    psi = div.scale(inv_n)
    P = curvature(D).schouten
    Ddiv = covariant_derivative(D, div)
    beta = TensorField.from_function(
        chart, (down(n),),
        lambda a: chart.const(-1, n + 1) * Ddiv[a] - sum((P[a, b] * v[b] for b in range(n)), chart.zero),
    )
    return {"phi": phi, "psi": psi, "beta": beta}


def prolong(D: AffineConnection, s: ProjectiveSolution) -> ProjectiveSolution:
    """填入伴随量；要求主方程残差为零"""
    residual = solution_residual(D, s)
    if not residual.is_zero():
        raise PreconditionError("base-residual", f"{s.kind.value} 残差非零，不能延拓")
    if s.kind in (SolutionKind.PROJECTIVE, SolutionKind.AFFINE):
        extra = symmetry_companions(D, s.data)
    elif s.kind == SolutionKind.BIVECTOR:
        extra = {"nu": bivector_nu(D, s.data)}
    elif s.kind == SolutionKind.EULER:
        extra = {"psi": covariant_derivative(D, s.data).contract(0, 1).scale(D.chart.const(1, D.n))}
    else:
        extra = {}
    return ProjectiveSolution(s.kind, s.data, extra)


def prolonged_residuals(D: AffineConnection, s: ProjectiveSolution) -> Dict[str, TensorField]:
    """延拓方程组逐式残差"""
    if not s.prolongation:
        s = prolong(D, s)
    n, chart = D.n, D.chart
    pr = s.prolongation
    if s.kind == SolutionKind.BIVECTOR:
        w, nu = s.data, pr["nu"]
        Dw = covariant_derivative(D, w)
        return {
            "Dw": TensorField.from_function(
                chart, Dw.slots,
                lambda c, a, b: Dw[c, a, b] - kron(c, a) * nu[b] + kron(c, b) * nu[a],
            ),
            "Dnu": bivector_second_order(D, w, nu),
        }
    if s.kind not in (SolutionKind.PROJECTIVE, SolutionKind.AFFINE):
        return {}

    v, phi, psi, beta = s.data, pr["phi"], pr["psi"], pr["beta"]
    curv = curvature(D)
    P, R = curv.schouten, curv.riemann
    Dv = covariant_derivative(D, v)
    Dphi = covariant_derivative(D, phi)  # [A][B][C] = D_A φ_B^C
    Dpsi = covariant_derivative(D, psi)
    out = {
        "Dv": TensorField.from_function(
            chart, Dv.slots, lambda a, b: Dv[a, b] - phi[a, b] - kron(a, b) * psi.value()
        ),
    }
    if s.kind == SolutionKind.AFFINE:
        out["Dphi"] = TensorField.from_function(
            chart, Dphi.slots,
            lambda a, b, c: Dphi[a, b, c] + sum((v[d] * R[d, a, c, b] for d in range(n)), chart.zero),
        )
        out["Dpsi"] = Dpsi
        return out

    W = weyl_cotton(D).weyl
    Y = weyl_cotton(D).cotton
    half = chart.const(1, 2)
    ratio = chart.const(n + 1, n)
    Pv = [sum((P[b, d] * v[d] for d in range(n)), chart.zero) for b in range(n)]
    out["Dpsi"] = TensorField.from_function(
        chart, (down(n),), lambda a: Dpsi[a] + ratio * (beta[a] + Pv[a])
    )

    def dphi(a, b, c):
        value = half * (Dphi[a, b, c] + Dphi[b, a, c]) + P[a, b] * v[c]
        for d in range(n):
            value += half * v[d] * (W[d, a, c, b] + W[d, b, c, a])
        x_b = Pv[b] - (n - 1) * beta[b]
        x_a = Pv[a] - (n - 1) * beta[a]
        value -= chart.const(1, n) * half * (kron(a, c) * x_b + kron(b, c) * x_a)
        return value

    out["Dphi"] = TensorField.from_function(chart, Dphi.slots, dphi)
    Dbeta = covariant_derivative(D, beta)

    def dbeta(a, b):
        value = Dbeta[a, b] - P[a, b] * psi.value()
        for c in range(n):
            value -= P[a, c] * phi[b, c] + v[c] * Y[a, b, c]
        return value

    out["Dbeta"] = TensorField.from_function(chart, Dbeta.slots, dbeta)
    return out


# ---------- 射影变换 ----------

def transform_solution(D: AffineConnection, s: Scalar, sol: ProjectiveSolution
                       ) -> Tuple[AffineConnection, ProjectiveSolution]:
    """在 Υ = (∂s)/s 的射影变换下变换解数据，表示按 s^w 缩放"""
    chart = D.chart
    s = chart.coerce(s)
    n = D.n
    D_hat = projective_rescale(D, s)
    upsilon = log_gradient(chart, s)
    if not sol.prolongation and sol.kind in (SolutionKind.PROJECTIVE, SolutionKind.AFFINE, SolutionKind.BIVECTOR):
        sol = prolong(D, sol)
    scale = s ** sol.weight
    data = sol.data.scale(scale)
    pr = sol.prolongation
    extra: Dict[str, TensorField] = {}

    if sol.kind in (SolutionKind.PROJECTIVE, SolutionKind.AFFINE):
        v, phi, psi, beta = sol.data, pr["phi"], pr["psi"], pr["beta"]
        uv = sum((upsilon[c] * v[c] for c in range(n)), chart.zero)
        inv_n = chart.const(1, n)
        extra["phi"] = TensorField.from_function(
            chart, phi.slots, lambda b, a: phi[b, a] - inv_n * uv * kron(a, b) + upsilon[b] * v[a]
        )
        extra["psi"] = TensorField.scalar(chart, psi.value() + chart.const(n + 1, n) * uv)
        extra["beta"] = TensorField.from_function(
            chart, beta.slots,
            lambda a: beta[a]
            - sum((upsilon[b] * phi[a, b] for b in range(n)), chart.zero)
            - upsilon[a] * psi.value() - upsilon[a] * uv,
        )
    elif sol.kind == SolutionKind.BIVECTOR:
        w, nu = sol.data, pr["nu"]
        extra["nu"] = TensorField.from_function(
            chart, nu.slots,
            lambda a: scale * (nu[a] - sum((w[a, b] * upsilon[b] for b in range(n)), chart.zero)),
            pweight=nu.pweight,
        )
    return D_hat, ProjectiveSolution(sol.kind, data, extra)


# ---------- 有界次数求解 ----------

def solve_solutions(D: AffineConnection, kind, degree: int,
                    integrable_only: bool = True) -> List[ProjectiveSolution]:
    """x 上次数 ≤ degree 的多项式解空间的一组基；integrable_only 时可积条件与主方程一起求解"""
    kind = SolutionKind(kind)
    chart = D.chart
    basis = polynomial_basis(
        chart, kind_slots(kind, D.n), degree,
        antisymmetric=kind == SolutionKind.BIVECTOR, pweight=KIND_WEIGHTS[kind],
    )
    W = weyl_cotton(D).weyl if integrable_only and _needs_weyl(kind, D.n) else None

    def residuals(t: TensorField) -> List[TensorField]:
        sol = ProjectiveSolution(kind, t)
        out = [solution_residual(D, sol)]
        if integrable_only:
            named = integrability_residuals(D, sol, W)
            out.extend(named[key] for key in sorted(named))
        return out

    out = [ProjectiveSolution(kind, t) for t in solve_linear_ansatz(chart, basis, residuals)]
    logger.debug(f"solve_solutions {kind.value}: 次数 ≤ {degree}, {len(out)} 维")
    return out
