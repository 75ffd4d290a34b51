"""
PW 几何上的旋量微积分

χ = 1 ∈ Λ^0；η̌ 取 Λ^0 分量再乘 −½；η' = √2 η = p_A e^A（对偶旋量）。
旋量联络 ω_a = −¼ Γ̃_abc γ^b γ^c，对偶旋量按右乘：D_a φ = e_a(φ) − φ ω_a。
"""

import logging
from typing import Dict, List, Optional, Sequence, Tuple

from ..errors import PreconditionError, SlotMismatchError
from ..pwext import PWGeometry, frame_christoffels, weyl_closed
from ..symcore import Scalar, Slot, Space, TensorField
from .clifford import CliffordModule, Spinor, clifford_module

logger = logging.getLogger('PWLab.spin')


def make_chi_etacheck(C: CliffordModule) -> Tuple[Spinor, Spinor]:
    """(χ, η̌)，η̌χ = −½"""
    chi = C.basis_spinor(0)
    etacheck = Spinor.from_dict(C.chart, {0: C.chart.const(-1, 2)}, dual=True)
    return chi, etacheck


def frame_derivative(P: PWGeometry, f: Scalar, a: int) -> Scalar:
    """e_a(f)"""
    row = P.frame[a]
    total = P.chart.zero
    for mu in range(P.dim):
        if row[mu].numer:
            total += row[mu] * P.d(f, mu)
    return total


def _omega(C: CliffordModule, G: TensorField, a: int, psi: Spinor) -> Spinor:
    """ω_a ψ，或对偶旋量的 φ ω_a"""
    N = 2 * C.n
    quarter = C.chart.const(-1, 4)
    out = Spinor.zeros(C.chart, dual=psi.dual, cweight=psi.cweight)
    for b in range(N):
        for c in range(N):
            coeff = G[a, b, c]
            if coeff.numer:
                out = out + C.act_word((b, c), psi, upper=True).scale(quarter * coeff)
    return out


def spin_covariant_derivative(P: PWGeometry, psi: Spinor,
                              christoffels: Optional[TensorField] = None) -> List[Spinor]:
    """标架指标的 D̃_a ψ，a = 0..2n−1"""
    C = clifford_module(P.chart)
    G = christoffels if christoffels is not None else frame_christoffels(P)
    out = []
    for a in range(P.dim):
        derivative = psi.map(lambda f, a=a: frame_derivative(P, f, a))
        omega = _omega(C, G, a, psi)
        out.append(derivative - omega if psi.dual else derivative + omega)
    return out


def dirac(P: PWGeometry, psi: Spinor, nabla: Optional[Sequence[Spinor]] = None) -> Spinor:
    """∂̸ψ = γ^a D̃_a ψ；对偶旋量为 (D̃_a φ) γ^a"""
    C = clifford_module(P.chart)
    nabla = nabla if nabla is not None else spin_covariant_derivative(P, psi)
    out = Spinor.zeros(P.chart, dual=psi.dual, cweight=psi.cweight)
    for a, d in enumerate(nabla):
        out = out + C.act_up(a, d)
    return out


def twistor_residual(P: PWGeometry, psi: Spinor) -> List[Spinor]:
    """D̃_a ψ + (1/2n) γ_a ∂̸ψ"""
    C = clifford_module(P.chart)
    nabla = spin_covariant_derivative(P, psi)
    slash = dirac(P, psi, nabla)
    factor = P.chart.const(1, 2 * P.n)
    return [nabla[a] + C.act(a, slash).scale(factor) for a in range(P.dim)]


def clifford_compatibility(P: PWGeometry) -> List[Tuple[int, int, int]]:
    """[ω_a, γ_c] = Γ̃_abc γ^b 在基旋量上不成立的 (a, c, 基)"""
    C = clifford_module(P.chart)
    G = frame_christoffels(P)
    bad = []
    for a in range(P.dim):
        for c in range(P.dim):
            for mask in range(C.dim):
                e = C.basis_spinor(mask)
                lhs = _omega(C, G, a, C.act(c, e)) - C.act(c, _omega(C, G, a, e))
                for b in range(P.dim):
                    if G[a, b, c].numer:
                        lhs = lhs - C.act_up(b, e).scale(G[a, b, c])
                if not lhs.is_zero():
                    bad.append((a, c, mask))
    return bad


def _frame_components(P: PWGeometry, X: TensorField) -> List[Scalar]:
    """X^a = θ^a(X)"""
    return [
        sum((P.coframe[a][mu] * X[mu] for mu in range(P.dim) if X[mu].numer), P.chart.zero)
        for a in range(P.dim)
    ]


def conformal_killing_residual(P: PWGeometry, X: TensorField) -> TensorField:
    """L_X g − (1/n)(div X) g"""
    g = P.metric
    return P.lie_metric(X) - g.scale(P.divergence(X) * P.chart.const(1, P.n))


def lie_derivative_spinor(P: PWGeometry, X: TensorField, psi: Spinor) -> Spinor:
    """L_X ψ = X^a D̃_a ψ − ¼ (D̃_[a X_b]) γ^a γ^b ψ − (1/4n)(D̃_c X^c) ψ"""
    if psi.dual:
        raise SlotMismatchError("lie_derivative_spinor 只作用于旋量（列向量）")
    if not conformal_killing_residual(P, X).is_zero():
        raise PreconditionError("conformal-killing", "X 不是共形 Killing 场")
    C = clifford_module(P.chart)
    chart, N = P.chart, P.dim
    nabla = spin_covariant_derivative(P, psi)
    comps = _frame_components(P, X)

    out = Spinor.zeros(chart, cweight=psi.cweight)
    for a in range(N):
        if comps[a].numer:
            out = out + nabla[a].scale(comps[a])

    Xf = P.lower(X)
    half = chart.const(1, 2)
    dX = TensorField.from_function(
        chart, (Xf.slots[0], Xf.slots[0]),
        lambda m, v: half * (P.d(Xf[v], m) - P.d(Xf[m], v)),
    )
    dX = P.to_frame(dX)
    quarter = chart.const(-1, 4)
    for a in range(N):
        for b in range(N):
            if dX[a, b].numer:
                out = out + C.act_word((a, b), psi, upper=True).scale(quarter * dX[a, b])

    return out - psi.scale(P.divergence(X) * chart.const(1, 4 * P.n))


def eta_spinor(P: PWGeometry) -> Spinor:
    """η' = √2 η，分量 η'_A = p_A，共形权 1"""
    chart = P.chart
    return Spinor.from_dict(chart, {1 << a: chart.p(a) for a in range(P.n)}, dual=True, cweight=1)


def chi_projector(C: CliffordModule) -> List[List[Scalar]]:
    """χ_a^A：γ_a χ 在 e_A 上的分量"""
    chi, _ = make_chi_etacheck(C)
    return [[C.act(a, chi)[1 << A] for A in range(C.n)] for a in range(2 * C.n)]


def etacheck_projector(C: CliffordModule) -> List[List[Scalar]]:
    """η̌_aA：η̌γ_a 在 e_A 上的分量"""
    _, etacheck = make_chi_etacheck(C)
    return [[C.act(a, etacheck)[1 << A] for A in range(C.n)] for a in range(2 * C.n)]


def k_from_eta(P: PWGeometry) -> TensorField:
    """k^a = 2 η'_A χ^{aA}，换回坐标分量"""
    C = clifford_module(P.chart)
    eta = eta_spinor(P)
    chi_p = chi_projector(C)
    frame = []
    for a in range(P.dim):
        b = C.raised(a)
        frame.append(sum((2 * eta[1 << A] * chi_p[b][A] for A in range(P.n)), P.chart.zero))
    return P.vector_from_frame(frame)


def projector_identities(P: PWGeometry) -> Dict[str, TensorField]:
    """四个投影恒等式的残差"""
    C = clifford_module(P.chart)
    chart, n, N = P.chart, P.n, P.dim
    chi_p = chi_projector(C)
    check_p = etacheck_projector(C)
    _, etacheck = make_chi_etacheck(C)
    eta = eta_spinor(P)
    minus = Slot(Space.SPINOR_MINUS, n)
    even = Slot(Space.DUAL_SPINOR_PLUS, C.dim)

    def contract(left, right, A, B):
        return sum((left[a][A] * right[C.raised(a)][B] for a in range(N)), chart.zero)

    def eta_identity(Ap, B):
        # η'^a_{A'} η̌_{aB} + 2 η'_B η̌_{A'}
        lhs = chart.zero
        for a in range(N):
            up = C.act_up(a, eta)
            if check_p[a][B].numer and up[Ap].numer:
                lhs += up[Ap] * check_p[a][B]
        return lhs + 2 * eta[1 << B] * etacheck[Ap]

    return {
        "chi.chi": TensorField.from_function(chart, (minus, minus), lambda A, B: contract(chi_p, chi_p, A, B)),
        "etacheck.etacheck": TensorField.from_function(
            chart, (minus, minus), lambda A, B: contract(check_p, check_p, A, B)
        ),
        "chi.etacheck-delta": TensorField.from_function(
            chart, (minus, minus), lambda A, B: contract(chi_p, check_p, A, B) - (1 if A == B else 0)
        ),
        "eta.etacheck": TensorField.from_function(chart, (even, minus), eta_identity),
    }


def eta_equation_residual(P: PWGeometry) -> List[Spinor]:
    """D̃_a η' − η̌ γ_a − (1/8) k^d W̃_dabc η' γ^b γ^c"""
    C = clifford_module(P.chart)
    chart, n, N = P.chart, P.n, P.dim
    eta = eta_spinor(P)
    _, etacheck = make_chi_etacheck(C)
    nabla = spin_covariant_derivative(P, eta)
    W = weyl_closed(P)
    eighth = chart.const(1, 8)
    logger.debug(f"η 方程残差 n={n}")

    out = []
    for a in range(N):
        rhs = Spinor.zeros(chart, dual=True, cweight=1)
        for b in range(N):
            for c in range(N):
                coeff = sum((2 * chart.p(d) * W[n + d, a, b, c] for d in range(n)), chart.zero)
                if coeff.numer:
                    rhs = rhs + C.act_word((b, c), eta, upper=True).scale(eighth * coeff)
        out.append(nabla[a] - C.act(a, etacheck) - rhs)
    return out
