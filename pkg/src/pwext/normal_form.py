"""
Walker 标准形：g = 2 dx⊙dp − 2 Θ_AB dx⊙dx

只接受已经处在垂直分布 = span{∂p} 的坐标中的输入，不搜索这样的坐标。
"""

from dataclasses import dataclass
from typing import Optional, Union

from ..errors import GradingError
from ..projective import AffineConnection
from ..symcore import Chart, Slot, TensorField, down, down_t, get_chart, up
from .geometry import PWGeometry


@dataclass(frozen=True)
class Rejection:
    """标准形不是 PW 度量时的拒绝原因"""
    condition: str
    detail: str = ""

    def __str__(self) -> str:
        return f"rejected: {self.condition}" + (f" ({self.detail})" if self.detail else "")


@dataclass(frozen=True)
class WalkerNormalForm:
    n: int
    theta: TensorField

    @classmethod
    def from_entries(cls, n: int, entries) -> "WalkerNormalForm":
        """entries: {(A, B): 字符串或数}，自动对称补全"""
        chart = get_chart(n)
        table = {}
        for (a, b), value in entries.items():
            scalar = chart.parse(value) if isinstance(value, str) else chart.coerce(value)
            table[(a, b)] = table[(b, a)] = scalar
        theta = TensorField.from_function(
            chart, (_base_down(chart), _base_down(chart)), lambda a, b: table.get((a, b), 0)
        )
        return cls(n, theta)

    @classmethod
    def from_connection(cls, D: AffineConnection) -> "WalkerNormalForm":
        """Θ_AB = Γ_A^C_B p_C；D 不必特殊，有迹时 recover_connection 会拒绝"""
        chart = D.chart

        def comp(a, b):
            return sum((D.G(a, c, b) * chart.p(c) for c in range(D.n)), chart.zero)

        return cls(D.n, TensorField.from_function(chart, (_base_down(chart), _base_down(chart)), comp))

    @classmethod
    def from_geometry(cls, P: PWGeometry) -> "WalkerNormalForm":
        return cls.from_connection(P.source)

    @property
    def chart(self) -> Chart:
        return self.theta.chart

    def metric(self) -> TensorField:
        n = self.n

        def comp(mu, nu):
            if mu < n and nu < n:
                return -2 * self.theta[mu, nu]
            if mu < n <= nu:
                return 1 if nu - n == mu else 0
            if nu < n <= mu:
                return 1 if mu - n == nu else 0
            return 0

        return TensorField.from_function(self.chart, (down_t(n), down_t(n)), comp)


def _base_down(chart: Chart) -> Slot:
    return down(chart.n)


def normal_form_from_metric(g: TensorField) -> Union[WalkerNormalForm, Rejection]:
    """从坐标度量读出 Θ；g_xp 必须为 δ，g_pp 必须为 0"""
    chart = g.chart
    n = chart.n
    for mu in range(2 * n):
        for nu in range(n, 2 * n):
            want = chart.zero
            if mu < n:
                want = chart.one if nu - n == mu else chart.zero
            if g[mu, nu] != want:
                return Rejection("walker-normal-form", f"g[{mu},{nu}] 不是标准形")
    half = chart.const(-1, 2)
    theta = TensorField.from_function(
        chart, (_base_down(chart), _base_down(chart)), lambda a, b: half * g[a, b]
    )
    return WalkerNormalForm(n, theta)


def _first_violation(N: WalkerNormalForm) -> Optional[Rejection]:
    chart, n = N.chart, N.n
    theta = N.theta
    for a in range(n):
        for b in range(n):
            if theta[a, b] != theta[b, a]:
                return Rejection("symmetric", f"Θ_{a + 1}{b + 1} ≠ Θ_{b + 1}{a + 1}")
    try:
        degrees = theta.p_degrees()
    except GradingError as e:
        return Rejection("polynomial", str(e))
    # 依次检查：线性、齐一次、迹条件
    if any(d > 1 for d in degrees):
        return Rejection("linear", "Θ 含 p 的二次及以上项")
    if 0 in degrees:
        return Rejection("homogeneous", "Θ 含不依赖 p 的项")
    for a in range(n):
        trace = sum((chart.dp(theta[b, a], b) for b in range(n)), chart.zero)
        if trace.numer:
            return Rejection("trace", f"Σ_B ∂Θ_B{a + 1}/∂p_B ≠ 0")
    return None


def recover_connection(N: WalkerNormalForm) -> Union[AffineConnection, Rejection]:
    """Γ_A^C_B = ∂Θ_AB/∂p_C，或返回第一个不满足的条件"""
    rejection = _first_violation(N)
    if rejection is not None:
        return rejection
    chart, n = N.chart, N.n
    gamma = TensorField.from_function(
        chart, (_base_down(chart), up(n), _base_down(chart)),
        lambda a, c, b: chart.dp(N.theta[a, b], c),
    )
    return AffineConnection(chart, gamma, chart.one)
