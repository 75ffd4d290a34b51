"""
Patterson–Walker 度量及其坐标 Levi-Civita 数据

T*M 上坐标 (x^A, p_A)，坐标指标 μ < n 对应 x^μ，μ ≥ n 对应 p_{μ−n}。
适配标架 a < n 为水平向量 H_A = ∂x^A + Γ_A^C_B p_C ∂p_B，a ≥ n 为垂直向量 V_A = ∂p_A。
所有 M̃ 张量以坐标分量存储，标架只是一组换基矩阵。
"""

import logging
from functools import cached_property
from typing import List, Sequence

from ..errors import SlotMismatchError
from ..projective import AffineConnection, curvature, require_special, weyl_cotton
from ..symcore import Scalar, TensorField, down_t, kron, up_t
from ..symcore.tensor import Basis, Space

logger = logging.getLogger('PWLab.pwext')


class PWGeometry:
    """由特殊联络构造的 Patterson–Walker 几何，曲率按需计算并缓存"""

    def __init__(self, D: AffineConnection):
        require_special(D, "Patterson–Walker 度量")
        self.source = D
        self.chart = D.chart
        self.n = D.n
        self.dim = 2 * D.n

    def __repr__(self) -> str:
        return f"PWGeometry(n={self.n})"

    # ---------- 基本量 ----------

    def d(self, f: Scalar, mu: int) -> Scalar:
        """坐标偏导 ∂_μ"""
        return f.diff(self.chart.gens[mu])

    def theta_gamma(self, a: int, b: int) -> Scalar:
        """Θ_AB = Γ_A^C_B p_C"""
        D, chart = self.source, self.chart
        total = chart.zero
        for c in range(self.n):
            g = D.G(a, c, b)
            if g.numer:
                total += g * chart.p(c)
        return total

    @cached_property
    def metric(self) -> TensorField:
        """g = 2 dx⊙dp − 2 Γ_A^C_B p_C dx⊙dx"""
        n = self.n

        def comp(mu, nu):
            if mu < n and nu < n:
                return -2 * self.theta_gamma(mu, nu)
            if mu < n <= nu:
                return kron(mu, nu - n)
            if nu < n <= mu:
                return kron(nu, mu - n)
            return 0

        return TensorField.from_function(self.chart, (down_t(n), down_t(n)), comp)

    @cached_property
    def inverse_metric(self) -> TensorField:
        n = self.n

        def comp(mu, nu):
            if mu >= n and nu >= n:
                return 2 * self.theta_gamma(mu - n, nu - n)
            if mu < n <= nu:
                return kron(mu, nu - n)
            if nu < n <= mu:
                return kron(nu, mu - n)
            return 0

        return TensorField.from_function(self.chart, (up_t(n), up_t(n)), comp)

    @cached_property
    def frame(self) -> List[List[Scalar]]:
        """frame[a][μ]：第 a 个标架向量的坐标分量"""
        n, chart = self.n, self.chart
        rows = []
        for a in range(self.dim):
            row = [chart.zero] * self.dim
            if a < n:
                row[a] = chart.one
                for b in range(n):
                    row[n + b] = self.theta_gamma(a, b)
            else:
                row[a] = chart.one
            rows.append(row)
        return rows

    @cached_property
    def coframe(self) -> List[List[Scalar]]:
        """coframe[a][μ]：对偶余标架，dx^A 与 dp_A − Θ_EA dx^E"""
        n, chart = self.n, self.chart
        rows = []
        for a in range(self.dim):
            row = [chart.zero] * self.dim
            if a < n:
                row[a] = chart.one
            else:
                row[a] = chart.one
                for e in range(n):
                    row[e] = -self.theta_gamma(e, a - n)
            rows.append(row)
        return rows

    @cached_property
    def frame_metric(self) -> TensorField:
        """G(H_A, V_B) = δ_AB，其余为零"""
        n = self.n
        return TensorField.from_function(
            self.chart, (down_t(n), down_t(n)),
            lambda a, b: kron(a, b - n) if a < n <= b else (kron(b, a - n) if b < n <= a else 0),
            basis=Basis.ADAPTED,
        )

    # ---------- k 与 μ ----------

    @cached_property
    def k_vector(self) -> TensorField:
        """k = 2 p_A ∂p_A"""
        n, chart = self.n, self.chart
        return TensorField.from_function(
            chart, (up_t(n),), lambda mu: 2 * chart.p(mu - n) if mu >= n else 0
        )

    @cached_property
    def k_form(self) -> TensorField:
        """k_a = g_ab k^b = 2 p_A dx^A"""
        return self.lower(self.k_vector)

    @cached_property
    def mu(self) -> TensorField:
        """μ_ab = ∂_[a k_b]"""
        kf = self.k_form
        half = self.chart.const(1, 2)
        return TensorField.from_function(
            self.chart, (down_t(self.n), down_t(self.n)),
            lambda a, b: half * (self.d(kf[b], a) - self.d(kf[a], b)),
        )

    # ---------- 指标升降 ----------

    def lower(self, v: TensorField) -> TensorField:
        """向量 → 1-形式"""
        g, N = self.metric, self.dim
        return TensorField.from_function(
            self.chart, (down_t(self.n),),
            lambda mu: sum((g[mu, nu] * v[nu] for nu in range(N) if v[nu].numer), self.chart.zero),
            pweight=v.pweight, cweight=v.cweight,
        )

    def raise_index(self, w: TensorField) -> TensorField:
        gi, N = self.inverse_metric, self.dim
        return TensorField.from_function(
            self.chart, (up_t(self.n),),
            lambda mu: sum((gi[mu, nu] * w[nu] for nu in range(N) if w[nu].numer), self.chart.zero),
            pweight=w.pweight, cweight=w.cweight,
        )

    def raise_first(self, T: TensorField) -> TensorField:
        """T_ab → T^a_b"""
        gi, N = self.inverse_metric, self.dim
        return TensorField.from_function(
            self.chart, (up_t(self.n),) + T.slots[1:],
            lambda a, *rest: sum((gi[a, c] * T[(c,) + rest] for c in range(N)), self.chart.zero),
        )

    def inner(self, u: TensorField, v: TensorField) -> Scalar:
        """g(u, v)"""
        g, N = self.metric, self.dim
        total = self.chart.zero
        for mu in range(N):
            if not u[mu].numer:
                continue
            for nu in range(N):
                if v[nu].numer and g[mu, nu].numer:
                    total += g[mu, nu] * u[mu] * v[nu]
        return total

    def metric_trace(self, T: TensorField) -> Scalar:
        """g^ab T_ab"""
        gi, N = self.inverse_metric, self.dim
        total = self.chart.zero
        for a in range(N):
            for b in range(N):
                if gi[a, b].numer:
                    total += gi[a, b] * T[a, b]
        return total

    # ---------- Levi-Civita ----------

    @cached_property
    def christoffel_lowered(self) -> TensorField:
        """[λ][μ][ν] = ½(∂_μ g_λν + ∂_ν g_λμ − ∂_λ g_μν)"""
        g, half = self.metric, self.chart.const(1, 2)
        n = self.n
        return TensorField.from_function(
            self.chart, (down_t(n),) * 3,
            lambda l, m, v: half * (self.d(g[l, v], m) + self.d(g[l, m], v) - self.d(g[m, v], l)),
        )

    @cached_property
    def christoffel(self) -> TensorField:
        """[ρ][μ][ν] = Γ^ρ_μν，∇_μ ∂_ν = Γ^ρ_μν ∂_ρ"""
        low, gi, N = self.christoffel_lowered, self.inverse_metric, self.dim
        n = self.n
        return TensorField.from_function(
            self.chart, (up_t(n), down_t(n), down_t(n)),
            lambda r, m, v: sum((gi[r, l] * low[l, m, v] for l in range(N) if gi[r, l].numer), self.chart.zero),
        )

    @cached_property
    def riemann(self) -> TensorField:
        """坐标 Riemann [μ][ν][ρ][σ] = R_μν^ρ_σ，与底流形同一约定"""
        G, N, n = self.christoffel, self.dim, self.n
        logger.debug(f"计算 n={n} 的坐标 Riemann 张量")

        def comp(m, v, r, s):
            value = self.d(G[r, v, s], m) - self.d(G[r, m, s], v)
            for l in range(N):
                value += G[r, m, l] * G[l, v, s] - G[r, v, l] * G[l, m, s]
            return value

        return TensorField.from_function(self.chart, (down_t(n), down_t(n), up_t(n), down_t(n)), comp)

    @cached_property
    def riemann_lowered(self) -> TensorField:
        """R_μνρσ = g_ρλ R_μν^λ_σ"""
        R, g, N = self.riemann, self.metric, self.dim
        return TensorField.from_function(
            self.chart, (down_t(self.n),) * 4,
            lambda m, v, r, s: sum((g[r, l] * R[m, v, l, s] for l in range(N) if g[r, l].numer), self.chart.zero),
        )

    @cached_property
    def ricci(self) -> TensorField:
        return self.riemann.contract(0, 2)

    @cached_property
    def scalar_curvature(self) -> Scalar:
        return self.metric_trace(self.ricci)

    @cached_property
    def schouten(self) -> TensorField:
        """P̃ = (1/(2n−2))(Ric − Sc/(2(2n−1)) g)"""
        n, chart = self.n, self.chart
        g, ric, sc = self.metric, self.ricci, self.scalar_curvature
        c1 = chart.const(1, 2 * n - 2)
        c2 = chart.const(1, 2 * (2 * n - 1))
        return TensorField.from_function(
            chart, g.slots, lambda a, b: c1 * (ric[a, b] - c2 * sc * g[a, b])
        )

    @cached_property
    def weyl(self) -> TensorField:
        """W̃_abcd = R̃_abcd − g∧P̃（第三个指标降下）"""
        R, g, P = self.riemann_lowered, self.metric, self.schouten
        return TensorField.from_function(
            self.chart, R.slots,
            lambda a, b, c, d: R[a, b, c, d]
            - (g[c, a] * P[b, d] - g[c, b] * P[a, d])
            + (g[d, a] * P[b, c] - g[d, b] * P[a, c]),
        )

    @cached_property
    def cotton(self) -> TensorField:
        """Ỹ_cab = ∇_a P̃_bc − ∇_b P̃_ac"""
        DP = self.covd(self.schouten)
        return TensorField.from_function(
            self.chart, DP.slots, lambda c, a, b: DP[a, b, c] - DP[b, a, c]
        )

    # ---------- 坐标协变导数 ----------

    def covd(self, T: TensorField) -> TensorField:
        """M̃ 上坐标张量的 Levi-Civita 协变导数，导数槽位在最前"""
        G, N = self.christoffel, self.dim
        for s in T.slots:
            if s.space not in (Space.TANGENT_MT, Space.COTANGENT_MT):
                raise SlotMismatchError("covd 只作用于 M̃ 上的坐标张量")

        def comp(m, *idx):
            value = self.d(T[idx], m)
            for pos, s in enumerate(T.slots):
                for e in range(N):
                    moved = idx[:pos] + (e,) + idx[pos + 1:]
                    if s.space == Space.TANGENT_MT:
                        g = G[idx[pos], m, e]
                    else:
                        g = -G[e, m, idx[pos]]
                    if g.numer:
                        value += g * T[moved]
            return value

        return TensorField.from_function(
            self.chart, (down_t(self.n),) + T.slots, comp, cweight=T.cweight
        )

    def gradient(self, f: Scalar) -> TensorField:
        return TensorField.from_function(self.chart, (down_t(self.n),), lambda m: self.d(f, m))

    def hessian(self, f: Scalar) -> TensorField:
        """∇_a ∇_b f"""
        return self.covd(self.gradient(f))

    # ---------- Lie 导数 ----------

    def apply(self, X: TensorField, f: Scalar) -> Scalar:
        """X(f)"""
        total = self.chart.zero
        for mu in range(self.dim):
            if X[mu].numer:
                total += X[mu] * self.d(f, mu)
        return total

    def bracket(self, X: TensorField, Y: TensorField) -> TensorField:
        """[X, Y]^μ = X(Y^μ) − Y(X^μ)"""
        return TensorField.from_function(
            self.chart, (up_t(self.n),), lambda mu: self.apply(X, Y[mu]) - self.apply(Y, X[mu])
        )

    def lie_metric(self, X: TensorField) -> TensorField:
        """(L_X g)_μν"""
        g, N = self.metric, self.dim

        def comp(m, v):
            value = self.apply(X, g[m, v])
            for r in range(N):
                if g[r, v].numer:
                    value += g[r, v] * self.d(X[r], m)
                if g[m, r].numer:
                    value += g[m, r] * self.d(X[r], v)
            return value

        return TensorField.from_function(self.chart, g.slots, comp)

    def divergence(self, X: TensorField) -> Scalar:
        """det g 为常数，∇_a X^a = ∂_μ X^μ"""
        return sum((self.d(X[mu], mu) for mu in range(self.dim)), self.chart.zero)

    def lie_derivative_vector(self, X: TensorField, Y: TensorField) -> TensorField:
        return self.bracket(X, Y)

    def lie_derivative_density(self, X: TensorField, f: Scalar, weight: int) -> Scalar:
        """L_X σ = X(σ) − w σ（X = k 时的齐次度约定）"""
        return self.apply(X, f) - weight * f

    # ---------- 标架换基 ----------

    def to_frame(self, T: TensorField) -> TensorField:
        """坐标分量 → 适配标架分量，逐个指标转换"""
        if T.basis == Basis.ADAPTED:
            return T
        E, C, N = self.frame, self.coframe, self.dim
        current = T
        for pos, s in enumerate(T.slots):
            matrix = C if s.space == Space.TANGENT_MT else E

            def comp(*idx, pos=pos, current=current, matrix=matrix):
                total = self.chart.zero
                a = idx[pos]
                for mu in range(N):
                    m = matrix[a][mu]
                    if m.numer:
                        total += m * current[idx[:pos] + (mu,) + idx[pos + 1:]]
                return total

            current = TensorField.from_function(
                self.chart, T.slots, comp, pweight=T.pweight, cweight=T.cweight
            )
        return current.with_meta(basis=Basis.ADAPTED)

    def frame_vector(self, a: int) -> TensorField:
        return TensorField.from_function(self.chart, (up_t(self.n),), lambda mu: self.frame[a][mu])

    def vector_from_frame(self, comps: Sequence[Scalar]) -> TensorField:
        """标架分量 → 坐标向量"""
        E, N = self.frame, self.dim
        return TensorField.from_function(
            self.chart, (up_t(self.n),),
            lambda mu: sum((comps[a] * E[a][mu] for a in range(N) if comps[a].numer), self.chart.zero),
        )

    # ---------- 底流形数据 ----------

    @cached_property
    def base_curvature(self):
        return curvature(self.source)

    @cached_property
    def base_weyl_cotton(self):
        return weyl_cotton(self.source)


def build(D: AffineConnection) -> PWGeometry:
    """要求特殊联络，否则提示先取 special_part"""
    return PWGeometry(D)
