"""
无挠仿射联络与射影变换

Γ 按 [A][C][B] 存储，对应 Γ_A^C_B，约定 D_A v^C = ∂_A v^C + Γ_A^C_B v^B。
联络附带一个体积形式，只存其唯一独立分量 e = ε_{1..n}。
"""

import itertools
from dataclasses import dataclass
from typing import Dict, Optional, Tuple

from ..errors import NotSpecialError, PreconditionError, SlotMismatchError
from ..symcore import Chart, Scalar, TensorField, down, get_chart, kron, up
from ..symcore.tensor import Parity, Space


@dataclass(frozen=True)
class AffineConnection:
    """Γ_A^C_B 加体积分量 e"""
    chart: Chart
    gamma: TensorField
    volume: Scalar

    def __post_init__(self):
        n = self.chart.n
        if self.gamma.slots != (down(n), up(n), down(n)):
            raise SlotMismatchError(f"Γ 的槽位应为 (下, 上, 下)，得到 {self.gamma.slots}")
        if not self.gamma.depends_only_on_x():
            raise PreconditionError("base-tensor", "Γ 只能依赖 x")
        if not self.volume.numer or not self.chart.is_x_only(self.volume):
            raise PreconditionError("volume-nonvanishing", "体积形式必须非零且只依赖 x")
        for a, c, b in itertools.product(range(n), repeat=3):
            if self.gamma[a, c, b] != self.gamma[b, c, a]:
                raise PreconditionError("torsion-free", f"Γ_{a + 1}^{c + 1}_{b + 1} ≠ Γ_{b + 1}^{c + 1}_{a + 1}")

    @property
    def n(self) -> int:
        return self.chart.n

    def G(self, a: int, c: int, b: int) -> Scalar:
        return self.gamma.components[(a * self.n + c) * self.n + b]

    # ---------- 构造 ----------

    @classmethod
    def from_entries(cls, n: int, entries: Dict[Tuple[int, int, int], object],
                     volume: Optional[object] = None, symmetrize: bool = True) -> "AffineConnection":
        """entries 键为 0 起的 (A, C, B)；默认自动补 (B, C, A)"""
        chart = get_chart(n)
        table = {}
        for (a, c, b), value in entries.items():
            v = chart.parse(value) if isinstance(value, str) else chart.coerce(value)
            table[(a, c, b)] = v
            if symmetrize and (b, c, a) not in entries:
                table[(b, c, a)] = v
        gamma = TensorField.from_function(
            chart, (down(n), up(n), down(n)), lambda a, c, b: table.get((a, c, b), 0)
        )
        vol = chart.one if volume is None else (
            chart.parse(volume) if isinstance(volume, str) else chart.coerce(volume)
        )
        return cls(chart, gamma, vol)

    @classmethod
    def flat(cls, n: int) -> "AffineConnection":
        return cls.from_entries(n, {})

    # ---------- 迹与体积 ----------

    def trace(self) -> TensorField:
        """Γ_A^C_C"""
        return self.gamma.contract(1, 2)

    def log_volume_gradient(self) -> TensorField:
        """∂_A log e"""
        chart = self.chart
        return TensorField.from_function(
            chart, (down(self.n),), lambda a: chart.dx(self.volume, a) / self.volume
        )

    def density_term(self) -> TensorField:
        """Γ_A^C_C − ∂_A log e，在权 w 的密度上乘 w/(n+1)"""
        return self.trace() - self.log_volume_gradient()

    def volume_form(self) -> TensorField:
        """ε_{A1..An} = e·sgn"""
        n = self.n

        def comp(*idx):
            if len(set(idx)) < n:
                return 0
            return self.volume * _perm_sign(idx)

        t = TensorField.from_function(self.chart, [down(n)] * n, comp, pweight=n + 1)
        return t.with_meta(symmetries=((tuple(range(n)), Parity.ANTISYM),))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, AffineConnection)
            and self.chart == other.chart
            and self.gamma.equals(other.gamma)
            and self.volume == other.volume
        )

    __hash__ = None


def _perm_sign(idx) -> int:
    sign = 1
    idx = list(idx)
    for i in range(len(idx)):
        for j in range(i + 1, len(idx)):
            if idx[i] > idx[j]:
                sign = -sign
    return sign


def levi_civita_symbol(chart: Chart, upper: bool = False) -> TensorField:
    """常数 ε 符号，ε_{12..n} = 1"""
    n = chart.n
    slot = up(n) if upper else down(n)
    return TensorField.from_function(
        chart, [slot] * n, lambda *idx: 0 if len(set(idx)) < n else _perm_sign(idx)
    )


def covariant_derivative(D: AffineConnection, T: TensorField) -> TensorField:
    """任意带权张量的协变导数，导数槽位在最前"""
    n, chart = D.n, D.chart
    for s in T.slots:
        if s.space not in (Space.TANGENT_M, Space.COTANGENT_M):
            raise SlotMismatchError("协变导数只作用于 M 上的张量")
    weight_factor = chart.const(T.pweight, n + 1)
    density = D.density_term() if T.pweight else None

    def comp(a, *idx):
        value = chart.dx(T[idx], a)
        for pos, s in enumerate(T.slots):
            for e in range(n):
                moved = idx[:pos] + (e,) + idx[pos + 1:]
                if s.space == Space.TANGENT_M:
                    g = D.G(a, idx[pos], e)
                    if g.numer:
                        value += g * T[moved]
                else:
                    g = D.G(a, e, idx[pos])
                    if g.numer:
                        value -= g * T[moved]
        if density is not None:
            value += weight_factor * density[a] * T[idx]
        return value

    return TensorField.from_function(chart, (down(n),) + T.slots, comp, pweight=T.pweight)


def is_special(D: AffineConnection) -> bool:
    """Γ_A^C_C = ∂_A log e"""
    return D.density_term().is_zero()


def require_special(D: AffineConnection, what: str) -> None:
    if not is_special(D):
        raise NotSpecialError(what)


def projective_change(D: AffineConnection, upsilon: TensorField) -> AffineConnection:
    """Γ̂_A^C_B = Γ_A^C_B + δ_A^C Υ_B + δ_B^C Υ_A，体积不变"""
    n = D.n
    if upsilon.slots != (down(n),):
        raise SlotMismatchError("Υ 必须是 M 上的 1-形式")
    gamma = TensorField.from_function(
        D.chart, D.gamma.slots,
        lambda a, c, b: D.G(a, c, b) + kron(a, c) * upsilon[b] + kron(b, c) * upsilon[a],
    )
    return AffineConnection(D.chart, gamma, D.volume)


def log_gradient(chart: Chart, s: Scalar) -> TensorField:
    """Υ = (∂s)/s"""
    if not s.numer:
        raise PreconditionError("scale-nonvanishing", "尺度 s 不能为零")
    return TensorField.from_function(chart, (down(chart.n),), lambda a: chart.dx(s, a) / s)


def projective_rescale(D: AffineConnection, s: Scalar) -> AffineConnection:
    """Υ = (∂s)/s 的射影变换，体积换成 s^{n+1}·e，特殊性保持"""
    s = D.chart.coerce(s)
    if not D.chart.is_x_only(s):
        raise PreconditionError("base-scale", "尺度 s 只能依赖 x")
    changed = projective_change(D, log_gradient(D.chart, s))
    return AffineConnection(D.chart, changed.gamma, D.volume * s ** (D.n + 1))


def special_part(D: AffineConnection) -> Tuple[TensorField, AffineConnection]:
    """Υ_A = (1/(n+1))(∂_A log e − Γ_A^C_C)，变换后的联络保持 e"""
    upsilon = D.density_term().scale(D.chart.const(-1, D.n + 1))
    return upsilon, projective_change(D, upsilon)


def thomas_parameters(D: AffineConnection) -> TensorField:
    """Π_A^C_B = Γ_A^C_B − (1/(n+1))(δ_A^C Γ_B^D_D + δ_B^C Γ_A^D_D)"""
    n = D.n
    tr = D.trace()
    factor = D.chart.const(1, n + 1)
    return TensorField.from_function(
        D.chart, D.gamma.slots,
        lambda a, c, b: D.G(a, c, b) - factor * (kron(a, c) * tr[b] + kron(b, c) * tr[a]),
    )
