"""
底流形对称数据到 M̃ 上（共形）Killing 场的提升

共形情形（射影对称 v、双向量 w、Killing 1-形式 α）：
    ṽ_0 = v^A H_A + (−φ_B^A p_A + ((n−1)/(n+1)) ψ p_B) V_B
    ṽ_+ = w^AB p_A H_B − (ν^C p_C) p_B V_B
    ṽ_− = α_B V_B
仿射情形（仿射对称、平行双向量、Killing 1-形式）得到真正的 Killing 场：
    ṽ_0 = v^A H_A − (φ_B^A p_A + ψ p_B) V_B
    ṽ_+ = w^AB p_A H_B
L_k 特征值依次为 0、+2、−2。
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Optional

from ..einstein import lift_minus, lift_plus
from ..errors import DimensionError, PreconditionError, SlotMismatchError
from ..projective import (
    AffineConnection, ProjectiveSolution, SolutionKind, affine_bivector_residuals, covariant_derivative,
    dualize_lowdim, integrability_residuals, levi_civita_symbol, prolong, solution_residual,
    transform_solution,
)
from ..pwext import PWGeometry, build
from ..spin import Spinor, chi_projector, clifford_module, eta_spinor
from ..symcore import Scalar, Slot, Space, TensorField, up_t
from .killing import CKProlongation, ck_residual, killing_residual

logger = logging.getLogger('PWLab.symmetry')


class LiftMode(str, Enum):
    CONFORMAL = "conformal"
    KILLING = "killing"


class LiftPart(str, Enum):
    ZERO = "0"
    PLUS = "+"
    MINUS = "-"


EIGENVALUES = {LiftPart.ZERO: 0, LiftPart.PLUS: 2, LiftPart.MINUS: -2}


@dataclass(frozen=True)
class ConformalKillingCandidate:
    vector: TensorField
    prolongation: Optional[CKProlongation] = None
    part: Optional[LiftPart] = None
    source: Optional[ProjectiveSolution] = None

    @property
    def eigenvalue(self) -> Optional[int]:
        return EIGENVALUES[self.part] if self.part is not None else None


_PARTS = {
    SolutionKind.PROJECTIVE: LiftPart.ZERO,
    SolutionKind.AFFINE: LiftPart.ZERO,
    SolutionKind.BIVECTOR: LiftPart.PLUS,
    SolutionKind.KILLING: LiftPart.MINUS,
}


def _prolonged(D: AffineConnection, sol: ProjectiveSolution) -> ProjectiveSolution:
    if not solution_residual(D, sol).is_zero():
        raise PreconditionError("base-residual", f"{sol.kind.value} 不满足其底方程")
    if sol.kind in (SolutionKind.PROJECTIVE, SolutionKind.AFFINE, SolutionKind.BIVECTOR) and not sol.prolongation:
        return prolong(D, sol)
    return sol


def _from_frame(P: PWGeometry, horizontal: List[Scalar], vertical: List[Scalar]) -> TensorField:
    return P.vector_from_frame([P.chart.coerce(c) for c in list(horizontal) + list(vertical)])


def _zero_lift(P: PWGeometry, sol: ProjectiveSolution, vertical_psi) -> TensorField:
    """v^A H_A − φ_B^A p_A V_B + (系数·ψ) p_B V_B"""
    chart, n = P.chart, P.n
    v, phi, psi = sol.data, sol.prolongation["phi"], sol.prolongation["psi"].value()
    vertical = []
    for b in range(n):
        value = vertical_psi * psi * chart.p(b)
        for a in range(n):
            if phi[b, a].numer:
                value -= phi[b, a] * chart.p(a)
        vertical.append(value)
    return _from_frame(P, [v[a] for a in range(n)], vertical)


def _plus_lift(P: PWGeometry, sol: ProjectiveSolution, with_nu: bool) -> TensorField:
    chart, n = P.chart, P.n
    w = sol.data
    horizontal = [sum((w[a, b] * chart.p(a) for a in range(n)), chart.zero) for b in range(n)]
    vertical = [chart.zero] * n
    if with_nu:
        nu = sol.prolongation["nu"]
        nu_p = sum((nu[c] * chart.p(c) for c in range(n)), chart.zero)
        vertical = [-nu_p * chart.p(b) for b in range(n)]
    return _from_frame(P, horizontal, vertical)


def _minus_lift(P: PWGeometry, sol: ProjectiveSolution) -> TensorField:
    alpha = sol.data
    return _from_frame(P, [P.chart.zero] * P.n, [alpha[b] for b in range(P.n)])


def lift_conformal(P: PWGeometry, sol: ProjectiveSolution) -> ConformalKillingCandidate:
    """射影对称 → ṽ_0，双向量 → ṽ_+，Killing 1-形式 → ṽ_−；得到共形 Killing 场"""
    D = P.source
    if sol.kind not in _PARTS:
        raise SlotMismatchError(f"{sol.kind.value} 没有共形 Killing 提升")
    sol = _prolonged(D, sol)
    part = _PARTS[sol.kind]
    if part == LiftPart.ZERO:
        X = _zero_lift(P, sol, P.chart.const(P.n - 1, P.n + 1))
    elif part == LiftPart.PLUS:
        if not integrability_residuals(D, sol)["w.W"].is_zero():
            raise PreconditionError("w.W", "w^B(A W_B(C^D)_E) ≠ 0")
        X = _plus_lift(P, sol, with_nu=True)
    else:
        X = _minus_lift(P, sol)
    logger.debug(f"共形提升 {sol.kind.value} → ṽ_{part.value}")
    return ConformalKillingCandidate(X, part=part, source=sol)


def lift_affine(P: PWGeometry, sol: ProjectiveSolution) -> ConformalKillingCandidate:
    """仿射对称 → ṽ_0，平行双向量 → ṽ_+，Killing 1-形式 → ṽ_−；得到 Killing 场"""
    D = P.source
    if sol.kind == SolutionKind.AFFINE:
        sol = _prolonged(D, sol)
        X = _zero_lift(P, sol, -1)
    elif sol.kind == SolutionKind.BIVECTOR:
        for name, residual in affine_bivector_residuals(D, sol.data).items():
            if not residual.is_zero():
                raise PreconditionError(name, "双向量不是满足曲率条件的平行双向量")
        X = _plus_lift(P, sol, with_nu=False)
    elif sol.kind == SolutionKind.KILLING:
        sol = _prolonged(D, sol)
        X = _minus_lift(P, sol)
    else:
        raise SlotMismatchError(f"{sol.kind.value} 没有仿射 Killing 提升")
    part = _PARTS[sol.kind]
    logger.debug(f"仿射提升 {sol.kind.value} → ṽ_{part.value}")
    return ConformalKillingCandidate(X, part=part, source=sol)


def lift(P: PWGeometry, sol: ProjectiveSolution, mode: LiftMode) -> ConformalKillingCandidate:
    return lift_conformal(P, sol) if LiftMode(mode) == LiftMode.CONFORMAL else lift_affine(P, sol)


def lift_residual(P: PWGeometry, cand: ConformalKillingCandidate, mode: LiftMode) -> TensorField:
    X = cand.vector
    return ck_residual(P, X) if LiftMode(mode) == LiftMode.CONFORMAL else killing_residual(P, X)


# ---------- 切向性 ----------

def tangency(P: PWGeometry, cand: ConformalKillingCandidate):
    """ṽ_− 与 χ_a^A 缩并为零；ṽ_+ 作用在 η 上（η'γ(ṽ_+)）为零"""
    C = clifford_module(P.chart)
    frame = P.to_frame(cand.vector)
    if cand.part == LiftPart.MINUS:
        chi_p = chi_projector(C)
        return TensorField.from_function(
            P.chart, (Slot(Space.SPINOR_MINUS, P.n),),
            lambda A: sum((frame[a] * chi_p[a][A] for a in range(P.dim)), P.chart.zero),
        )
    if cand.part == LiftPart.PLUS:
        eta = eta_spinor(P)
        out = Spinor.zeros(P.chart, dual=True, cweight=eta.cweight)
        for a in range(P.dim):
            if frame[a].numer:
                out = out + C.act(a, eta).scale(frame[a])
        return out
    raise PreconditionError("lift-part", "切向性只对 ṽ_± 定义")


# ---------- 类光与测地 ----------

@dataclass(frozen=True)
class LightlikeReport:
    mode: LiftMode
    norm: Scalar            # g(ṽ_0, ṽ_0)
    closed_form: Scalar     # 由 φ、ψ、v 直接写出的 2(…)·p
    criterion: TensorField  # 共形：v^B D_B v^A − (2/(n+1))(D_C v^C) v^A；仿射：v^B D_B v^A
    geodetic: bool          # v^B D_B v^A ∥ v^A

    @property
    def lightlike(self) -> bool:
        return not self.norm.numer

    def ok(self) -> bool:
        """范数等于闭式，且类光 ⇔ 判据为零"""
        return self.norm == self.closed_form and self.lightlike == self.criterion.is_zero()


def _along(D: AffineConnection, v: TensorField) -> List[Scalar]:
    Dv = covariant_derivative(D, v)
    return [sum((v[b] * Dv[b, a] for b in range(D.n)), D.chart.zero) for a in range(D.n)]


def lightlike_geodetic(P: PWGeometry, sol: ProjectiveSolution, mode: LiftMode = LiftMode.CONFORMAL) -> LightlikeReport:
    mode = LiftMode(mode)
    D, chart, n = P.source, P.chart, P.n
    cand = lift(P, sol, mode)
    sol = cand.source
    if cand.part != LiftPart.ZERO:
        raise PreconditionError("lift-part", "类光判据只对 ṽ_0 定义")
    v, phi, psi = sol.data, sol.prolongation["phi"], sol.prolongation["psi"].value()
    along = _along(D, v)

    if mode == LiftMode.CONFORMAL:
        coeff = chart.const(n - 1, n + 1) * psi
        div = psi * n
        crit = [along[a] - chart.const(2, n + 1) * div * v[a] for a in range(n)]
    else:
        coeff = -psi
        crit = list(along)
    closed = chart.zero
    for a in range(n):
        value = coeff * v[a] - sum((v[b] * phi[b, a] for b in range(n)), chart.zero)
        closed += 2 * value * chart.p(a)

    geodetic = all(
        not (along[a] * v[b] - along[b] * v[a]).numer for a in range(n) for b in range(a + 1, n)
    )
    return LightlikeReport(
        mode=mode,
        norm=P.inner(cand.vector, cand.vector),
        closed_form=closed,
        criterion=TensorField.from_function(chart, v.slots, lambda a: crit[a]),
        geodetic=geodetic,
    )


def killing_lift_norms(P: PWGeometry, sol: ProjectiveSolution) -> Scalar:
    """仿射提升的 |ṽ|² 与预期之差：ṽ_0 为 −2(ψv^A + φ_B^A v^B)p_A，ṽ_± 为 0"""
    if sol.kind == SolutionKind.AFFINE:
        report = lightlike_geodetic(P, sol, LiftMode.KILLING)
        return report.norm - report.closed_form
    cand = lift_affine(P, sol)
    return P.inner(cand.vector, cand.vector)


def affine_homothety_remark(P: PWGeometry, sol: ProjectiveSolution) -> Dict[str, TensorField]:
    """仿射对称按共形公式提升得到位似，散度为 (2n²/(n+1))ψ"""
    if sol.kind != SolutionKind.AFFINE:
        raise SlotMismatchError("affine_homothety_remark 需要仿射对称")
    chart, n = P.chart, P.n
    cand = lift_conformal(P, sol)
    X = cand.vector
    div = P.divergence(X)
    psi = cand.source.prolongation["psi"].value()
    return {
        "homothety": killing_residual(P, X) - P.metric.scale(div * chart.const(1, 2 * n)),
        "constant-divergence": P.gradient(div),
        "divergence": TensorField.scalar(chart, div - chart.const(2 * n * n, n + 1) * psi),
    }


# ---------- n = 3 ----------

def n3_bivector_to_oneform(P: PWGeometry, sol: ProjectiveSolution) -> TensorField:
    """½ ε̃^a_bc D̃^b ṽ_+^c 与 α = ½ w^BC ε_BCA 的提升 ṽ_− 之差"""
    if P.n != 3:
        raise DimensionError(f"n3_bivector_to_oneform 只在 n = 3 定义，得到 n = {P.n}")
    if sol.kind != SolutionKind.BIVECTOR:
        raise SlotMismatchError("n3_bivector_to_oneform 需要双向量")
    chart, n, N = P.chart, P.n, P.dim
    C = clifford_module(chart)
    plus = lift_conformal(P, sol)
    minus = lift_conformal(P, dualize_lowdim(P.source, sol))
    F = P.to_frame(P.covd(plus.vector))  # [b][c] = (D̃_{e_b} ṽ_+)^c
    eps = levi_civita_symbol(chart)
    half = chart.const(1, 2)

    # ε̃_abc = χ_a^A χ_b^B χ_c^C ε_ABC 只在三个水平标架指标上非零，升第一个指标后落在 V_A 上
    frame = [chart.zero] * N
    for a in range(n):
        value = chart.zero
        for b in range(n):
            for c in range(n):
                e = eps[a, b, c]
                if e.numer:
                    value += e * F[C.raised(b), c]
        frame[C.raised(a)] = half * value
    return P.vector_from_frame(frame) - minus.vector


# ---------- 射影变换不变性 ----------

@dataclass(frozen=True)
class InvarianceReport:
    kind: SolutionKind
    # D 上的提升 − D̂ 上的提升在 (x, p̂ = s²p) 中推前
    difference: TensorField

    def ok(self) -> bool:
        return self.difference.is_zero()


def _pushforward(P: PWGeometry, s: Scalar, X_hat: TensorField) -> TensorField:
    """X̂ 在 (x, p̂) 中的分量 → (x, p) 中的分量"""
    chart, n = P.chart, P.n
    s2 = s * s
    inv = chart.one / s2
    mapping = {n + a: s2 * chart.p(a) for a in range(n)}
    sub = [chart.substitute(X_hat[mu], mapping) for mu in range(P.dim)]
    dinv = sum((chart.dx(inv, m) * sub[m] for m in range(n) if sub[m].numer), chart.zero)

    def comp(mu):
        if mu < n:
            return sub[mu]
        return s2 * chart.p(mu - n) * dinv + inv * sub[mu]

    return TensorField.from_function(chart, (up_t(n),), comp)


def lift_invariance_check(D: AffineConnection, s, sol: ProjectiveSolution) -> InvarianceReport:
    """在 Υ = (∂s)/s 下变换底数据，在 D̂ 上重新提升并拉回，应与 D 上的提升逐分量相等"""

    chart = D.chart
    s = chart.coerce(s)
    P = build(D)
    D_hat, sol_hat = transform_solution(D, s, sol)
    P_hat = build(D_hat)

    if sol.kind in (SolutionKind.EULER, SolutionKind.RICCIFLAT):
        # 标量：共形权 1，σ̂ = s σ̃
        lift_scale = lift_plus if sol.kind == SolutionKind.EULER else lift_minus
        before = lift_scale(P, sol).as_tensor().value()
        after = lift_scale(P_hat, sol_hat).as_tensor().value()
        mapping = {D.n + a: s * s * chart.p(a) for a in range(D.n)}
        diff = s * before - chart.substitute(after, mapping)
        return InvarianceReport(sol.kind, TensorField.scalar(chart, diff))

    before = lift_conformal(P, sol).vector
    after = lift_conformal(P_hat, sol_hat).vector
    return InvarianceReport(sol.kind, before - _pushforward(P, s, after))
