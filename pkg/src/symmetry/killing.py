"""
M̃ 上的（共形）Killing 方程及其延拓

D̃_a ṽ_b = φ̃_ab − ψ̃ g_ab，φ̃ = D̃_[a ṽ_b]，ψ̃ = −(1/2n) D̃^a ṽ_a，
β̃_a = P̃_ab ṽ^b − D̃_a ψ̃。
"""

from dataclasses import dataclass
from typing import Dict, Optional

from ..pwext import PWGeometry
from ..symcore import Scalar, TensorField, down_t


@dataclass(frozen=True)
class CKProlongation:
    phi: TensorField    # φ̃_ab
    psi: Scalar         # ψ̃
    beta: TensorField   # β̃_a


def killing_residual(P: PWGeometry, X: TensorField) -> TensorField:
    """D̃_(a ṽ_b) = ½ L_ṽ g"""
    return P.lie_metric(X).scale(P.chart.const(1, 2))


def ck_residual(P: PWGeometry, X: TensorField) -> TensorField:
    """D̃_(a ṽ_b) 的无迹部分"""
    factor = P.divergence(X) * P.chart.const(1, 2 * P.n)
    return killing_residual(P, X) - P.metric.scale(factor)


def ck_prolongation(P: PWGeometry, X: TensorField) -> CKProlongation:
    chart, n, N = P.chart, P.n, P.dim
    Xf = P.lower(X)
    half = chart.const(1, 2)
    phi = TensorField.from_function(
        chart, (down_t(n), down_t(n)),
        lambda a, b: half * (P.d(Xf[b], a) - P.d(Xf[a], b)),
    )
    psi = P.divergence(X) * chart.const(-1, 2 * n)
    S = P.schouten
    beta = TensorField.from_function(
        chart, (down_t(n),),
        lambda a: sum((S[a, b] * X[b] for b in range(N) if X[b].numer), chart.zero) - P.d(psi, a),
    )
    return CKProlongation(phi, psi, beta)


def ck_prolongation_identities(P: PWGeometry, X: TensorField,
                               pr: Optional[CKProlongation] = None) -> Dict[str, TensorField]:
    """延拓方程组的三个残差；只在 ck_residual 为零时才应全为零"""
    pr = pr or ck_prolongation(P, X)
    chart, N = P.chart, P.dim
    g, S, W, Y = P.metric, P.schouten, P.weyl, P.cotton
    gi = P.inverse_metric
    Xf = P.lower(X)
    phi, psi, beta = pr.phi, pr.psi, pr.beta
    support = [d for d in range(N) if X[d].numer]

    DX = P.covd(Xf)
    out = {
        "Dv": TensorField.from_function(
            chart, DX.slots, lambda a, b: DX[a, b] - phi[a, b] + psi * g[a, b]
        ),
    }

    Dphi = P.covd(phi)

    def dphi(a, b, c):
        value = Dphi[a, b, c] + g[a, b] * beta[c] - g[a, c] * beta[b]
        value += S[a, b] * Xf[c] - S[a, c] * Xf[b]
        for d in support:
            value -= X[d] * W[d, a, b, c]
        return value

    out["Dphi"] = TensorField.from_function(chart, Dphi.slots, dphi)

    Dbeta = P.covd(beta)
    S_up = [[sum((S[a, d] * gi[d, c] for d in range(N) if gi[d, c].numer), chart.zero)
             for c in range(N)] for a in range(N)]

    def dbeta(a, b):
        value = Dbeta[a, b] - psi * S[a, b]
        for c in range(N):
            if S_up[a][c].numer:
                value -= S_up[a][c] * phi[c, b]
        for c in support:
            value -= X[c] * Y[b, a, c]
        return value

    out["Dbeta"] = TensorField.from_function(chart, Dbeta.slots, dbeta)
    return out


def mu_scalar(P: PWGeometry, X: TensorField) -> Scalar:
    """μ^a_b D̃_a ṽ^b − (1/n) D̃_a ṽ^a"""
    J = P.raise_first(P.mu)
    DX = P.covd(X)
    total = P.chart.zero
    for a in range(P.dim):
        for b in range(P.dim):
            if J[a, b].numer and DX[a, b].numer:
                total += J[a, b] * DX[a, b]
    return total - P.divergence(X) * P.chart.const(1, P.n)


def lie_k(P: PWGeometry, X: TensorField) -> TensorField:
    """L_k ṽ = [k, ṽ]"""
    return P.lie_derivative_vector(P.k_vector, X)


def lie_eigen_residual(P: PWGeometry, X: TensorField, eigenvalue: int) -> TensorField:
    return lie_k(P, X) - X.scale(eigenvalue)


def lie_cubic_residual(P: PWGeometry, X: TensorField) -> TensorField:
    """L_k (L_k − 2)(L_k + 2) ṽ = L_k³ ṽ − 4 L_k ṽ"""
    once = lie_k(P, X)
    thrice = lie_k(P, lie_k(P, once))
    return thrice - once.scale(4)
