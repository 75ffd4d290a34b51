"""
射影变换下 PW 度量的共形协变性，以及由 Thomas 参数直接构造 PW 度量
"""

import logging
from dataclasses import dataclass

from ..errors import PreconditionError
from ..projective import AffineConnection, log_gradient, projective_rescale, require_special, thomas_parameters
from ..symcore import Scalar, TensorField, kron
from .geometry import PWGeometry, build

logger = logging.getLogger('PWLab.pwext')


@dataclass(frozen=True)
class CovarianceReport:
    weight: int
    # ĝ − s^w (g + 2(w−2) p_(A Υ_B) dx⊙dx)
    difference: TensorField
    # ĝ − s² g
    conformal_difference: TensorField
    constant_scale: bool = False

    @property
    def is_conformal(self) -> bool:
        return self.conformal_difference.is_zero()

    def ok(self) -> bool:
        """差恒为零；s 非常数时 ĝ = s² g 当且仅当 w = 2"""
        if not self.difference.is_zero():
            return False
        return self.constant_scale or self.is_conformal == (self.weight == 2)


def _power(s: Scalar, w: int) -> Scalar:
    return s ** w if w >= 0 else s.field.one / s ** (-w)


def _require_working_chart(D: AffineConnection, s: Scalar) -> None:
    num, den = D.chart.value_at_origin(s)
    if num == 0 or den == 0:
        raise PreconditionError("scale-nonvanishing", "尺度 s 在原点邻域内必须非零且有定义")


def conformal_covariance_check(D: AffineConnection, s, w: int) -> CovarianceReport:
    """用 p̂ = s^w p 把 D̂ 的 PW 度量拉回原坐标，与 g 比较"""
    require_special(D, "conformal_covariance_check")
    chart, n = D.chart, D.n
    s = chart.coerce(s)
    _require_working_chart(D, s)
    upsilon = log_gradient(chart, s)
    hat = build(projective_rescale(D, s))
    g = build(D).metric
    sw = _power(s, w)
    logger.debug(f"共形协变检查 n={n} w={w}")

    # 新坐标 (x, p̂) 关于旧坐标 (x, p) 的 Jacobian
    def jacobian(alpha, mu):
        if alpha < n:
            return kron(alpha, mu)
        if mu < n:
            return chart.p(alpha - n) * chart.dx(sw, mu)
        return sw * kron(alpha - n, mu - n)

    N = 2 * n
    J = [[chart.coerce(jacobian(a, m)) for m in range(N)] for a in range(N)]
    mapping = {n + a: sw * chart.p(a) for a in range(n)}
    g_hat = [[chart.substitute(hat.metric[a, b], mapping) for b in range(N)] for a in range(N)]

    def pulled(mu, nu):
        total = chart.zero
        for a in range(N):
            if not J[a][mu].numer:
                continue
            for b in range(N):
                if J[b][nu].numer and g_hat[a][b].numer:
                    total += J[a][mu] * g_hat[a][b] * J[b][nu]
        return total

    pulled_metric = TensorField.from_function(chart, g.slots, pulled)

    def predicted(mu, nu):
        value = g[mu, nu]
        if mu < n and nu < n:
            value += (w - 2) * (chart.p(mu) * upsilon[nu] + chart.p(nu) * upsilon[mu])
        return sw * value

    return CovarianceReport(
        weight=w,
        difference=pulled_metric - TensorField.from_function(chart, g.slots, predicted),
        conformal_difference=pulled_metric - g.scale(s * s),
        constant_scale=upsilon.is_zero(),
    )


def thomas_pw(D: AffineConnection) -> PWGeometry:
    """以 Thomas 参数 Π 和坐标体积构造 PW 度量；D 不必特殊"""
    chart = D.chart
    return build(AffineConnection(chart, thomas_parameters(D), chart.one))
