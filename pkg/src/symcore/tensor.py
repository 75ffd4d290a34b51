"""
带指标元数据的张量场

分量稠密存储（按行主序的扁平元组），每个槽位记录所在空间与维数，
另带射影权 pweight、共形权 cweight、基（坐标基 / 适配标架）与声明的对称性。
所有张量构造后不再修改。
"""

import itertools
import math
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Callable, Iterator, List, Sequence, Tuple, Union

from ..errors import GradingError, SlotMismatchError, WeightMismatchError
from .chart import Chart, Scalar, total_p_degree


class Space(str, Enum):
    """槽位所在空间"""
    TANGENT_M = "tangent-M"
    COTANGENT_M = "cotangent-M"
    TANGENT_MT = "tangent-Mtilde"
    COTANGENT_MT = "cotangent-Mtilde"
    SPINOR_PLUS = "spinor-plus"
    SPINOR_MINUS = "spinor-minus"
    DUAL_SPINOR_PLUS = "dual-spinor-plus"
    DUAL_SPINOR_MINUS = "dual-spinor-minus"


DUAL_SPACE = {
    Space.TANGENT_M: Space.COTANGENT_M,
    Space.COTANGENT_M: Space.TANGENT_M,
    Space.TANGENT_MT: Space.COTANGENT_MT,
    Space.COTANGENT_MT: Space.TANGENT_MT,
    Space.SPINOR_PLUS: Space.DUAL_SPINOR_PLUS,
    Space.DUAL_SPINOR_PLUS: Space.SPINOR_PLUS,
    Space.SPINOR_MINUS: Space.DUAL_SPINOR_MINUS,
    Space.DUAL_SPINOR_MINUS: Space.SPINOR_MINUS,
}

BASE_SPACES = (Space.TANGENT_M, Space.COTANGENT_M)


class Parity(str, Enum):
    SYM = "sym"
    ANTISYM = "antisym"


class Basis(str, Enum):
    COORDINATE = "coordinate"
    ADAPTED = "adapted"


@dataclass(frozen=True)
class Slot:
    space: Space
    dim: int


Index = Tuple[int, ...]


def up(n: int) -> Slot:
    return Slot(Space.TANGENT_M, n)


def down(n: int) -> Slot:
    return Slot(Space.COTANGENT_M, n)


def up_t(n: int) -> Slot:
    """M̃ 上的切向槽位（维数 2n）"""
    return Slot(Space.TANGENT_MT, 2 * n)


def down_t(n: int) -> Slot:
    return Slot(Space.COTANGENT_MT, 2 * n)


def _permutation_sign(perm: Sequence[int]) -> int:
    sign = 1
    seen = list(perm)
    for i in range(len(seen)):
        while seen[i] != i:
            j = seen[i]
            seen[i], seen[j] = seen[j], seen[i]
            sign = -sign
    return sign


@dataclass(frozen=True)
class TensorField:
    """张量场：槽位 + 稠密分量 + 权"""
    chart: Chart
    slots: Tuple[Slot, ...]
    components: Tuple[Scalar, ...]
    pweight: int = 0
    cweight: int = 0
    basis: Basis = Basis.COORDINATE
    symmetries: Tuple[Tuple[Tuple[int, ...], Parity], ...] = field(default=())

    def __post_init__(self):
        expected = math.prod(s.dim for s in self.slots)
        if len(self.components) != expected:
            raise SlotMismatchError(f"分量个数 {len(self.components)} 与槽位维数乘积 {expected} 不符")

    # ---------- 构造 ----------

    @classmethod
    def from_function(cls, chart: Chart, slots: Sequence[Slot], fn: Callable[..., object], **meta) -> "TensorField":
        slots = tuple(slots)
        comps = tuple(chart.coerce(fn(*idx)) for idx in _indices(slots))
        return cls(chart, slots, comps, **meta)

    @classmethod
    def zeros(cls, chart: Chart, slots: Sequence[Slot], **meta) -> "TensorField":
        slots = tuple(slots)
        count = math.prod(s.dim for s in slots)
        return cls(chart, slots, (chart.zero,) * count, **meta)

    @classmethod
    def scalar(cls, chart: Chart, value, **meta) -> "TensorField":
        return cls(chart, (), (chart.coerce(value),), **meta)

    @classmethod
    def from_nested(cls, chart: Chart, slots: Sequence[Slot], nested, **meta) -> "TensorField":
        """嵌套列表（字符串 / 数 / 域元素）→ 张量"""
        slots = tuple(slots)

        def pick(*idx):
            value = nested
            for i in idx:
                value = value[i]
            return chart.parse(value) if isinstance(value, str) else value

        return cls.from_function(chart, slots, pick, **meta)

    def with_meta(self, **changes) -> "TensorField":
        return replace(self, **changes)

    # ---------- 访问 ----------

    @property
    def rank(self) -> int:
        return len(self.slots)

    @property
    def shape(self) -> Tuple[int, ...]:
        return tuple(s.dim for s in self.slots)

    def _flat(self, idx: Index) -> int:
        flat = 0
        for i, s in zip(idx, self.slots):
            flat = flat * s.dim + i
        return flat

    def __getitem__(self, idx: Union[int, Index]) -> Scalar:
        if isinstance(idx, int):
            idx = (idx,)
        if len(idx) != self.rank:
            raise SlotMismatchError(f"指标个数 {len(idx)} 与阶数 {self.rank} 不符")
        return self.components[self._flat(idx)]

    def indices(self) -> Iterator[Index]:
        return _indices(self.slots)

    def items(self) -> Iterator[Tuple[Index, Scalar]]:
        return zip(self.indices(), self.components)

    def nonzero(self) -> List[Tuple[Index, Scalar]]:
        return [(idx, c) for idx, c in self.items() if c.numer]

    def is_zero(self) -> bool:
        return all(not c.numer for c in self.components)

    def value(self) -> Scalar:
        """0 阶张量的值"""
        if self.rank != 0:
            raise SlotMismatchError("value() 只用于标量")
        return self.components[0]

    # ---------- 代数 ----------

    def _check_compatible(self, other: "TensorField") -> None:
        if self.slots != other.slots or self.basis != other.basis:
            raise SlotMismatchError(f"槽位不兼容: {self.slots} / {other.slots}")
        if (self.pweight, self.cweight) != (other.pweight, other.cweight):
            raise WeightMismatchError(
                f"权不一致: ({self.pweight}, {self.cweight}) / ({other.pweight}, {other.cweight})"
            )

    def __add__(self, other: "TensorField") -> "TensorField":
        self._check_compatible(other)
        return replace(self, components=tuple(a + b for a, b in zip(self.components, other.components)), symmetries=())

    def __sub__(self, other: "TensorField") -> "TensorField":
        self._check_compatible(other)
        return replace(self, components=tuple(a - b for a, b in zip(self.components, other.components)), symmetries=())

    def __neg__(self) -> "TensorField":
        return replace(self, components=tuple(-a for a in self.components))

    def scale(self, factor) -> "TensorField":
        c = self.chart.coerce(factor)
        return replace(self, components=tuple(c * a for a in self.components))

    def __mul__(self, factor) -> "TensorField":
        if isinstance(factor, TensorField):
            return self.tensor(factor)
        return self.scale(factor)

    __rmul__ = scale

    def map(self, fn: Callable[[Scalar], Scalar]) -> "TensorField":
        return replace(self, components=tuple(fn(a) for a in self.components), symmetries=())

    def equals(self, other: "TensorField") -> bool:
        if self.slots != other.slots:
            return False
        return all(a == b for a, b in zip(self.components, other.components))

    def tensor(self, other: "TensorField") -> "TensorField":
        """外积，权相加"""
        comps = tuple(a * b for a in self.components for b in other.components)
        return TensorField(
            self.chart, self.slots + other.slots, comps,
            pweight=self.pweight + other.pweight,
            cweight=self.cweight + other.cweight,
            basis=self.basis,
        )

    def contract(self, i: int, j: int) -> "TensorField":
        """对一对对偶槽位求迹，其余槽位按原顺序保留"""
        if i == j or not (0 <= i < self.rank and 0 <= j < self.rank):
            raise SlotMismatchError(f"无效的缩并槽位 ({i}, {j})")
        si, sj = self.slots[i], self.slots[j]
        if si.dim != sj.dim or DUAL_SPACE[si.space] != sj.space:
            raise SlotMismatchError(f"槽位 {i}:{si} 与 {j}:{sj} 不是同维对偶空间")
        keep = [k for k in range(self.rank) if k not in (i, j)]
        new_slots = tuple(self.slots[k] for k in keep)

        def trace(*rest):
            full = [0] * self.rank
            for k, v in zip(keep, rest):
                full[k] = v
            total = self.chart.zero
            for t in range(si.dim):
                full[i] = full[j] = t
                total += self.components[self._flat(tuple(full))]
            return total

        return TensorField.from_function(
            self.chart, new_slots, trace,
            pweight=self.pweight, cweight=self.cweight, basis=self.basis,
        )

    def permute(self, order: Sequence[int]) -> "TensorField":
        """新第 k 个槽位 = 旧第 order[k] 个槽位"""
        order = tuple(order)
        if sorted(order) != list(range(self.rank)):
            raise SlotMismatchError(f"无效的排列 {order}")
        new_slots = tuple(self.slots[k] for k in order)

        def pick(*idx):
            old = [0] * self.rank
            for pos, k in enumerate(order):
                old[k] = idx[pos]
            return self.components[self._flat(tuple(old))]

        return TensorField.from_function(
            self.chart, new_slots, pick,
            pweight=self.pweight, cweight=self.cweight, basis=self.basis,
        )

    def symmetrize(self, slots: Sequence[int], parity: Parity = Parity.SYM) -> "TensorField":
        """对给定槽位做 (1/k!) 对称化或反对称化"""
        slots = tuple(slots)
        if len(set(self.slots[k] for k in slots)) > 1:
            raise SlotMismatchError("对称化的槽位必须属于同一空间")
        perms = list(itertools.permutations(range(len(slots))))
        weight = self.chart.const(1, len(perms))

        def average(*idx):
            total = self.chart.zero
            for perm in perms:
                src = list(idx)
                for pos, k in enumerate(slots):
                    src[k] = idx[slots[perm[pos]]]
                term = self.components[self._flat(tuple(src))]
                if parity == Parity.ANTISYM and _permutation_sign(perm) < 0:
                    total -= term
                else:
                    total += term
            return total * weight

        result = TensorField.from_function(
            self.chart, self.slots, average,
            pweight=self.pweight, cweight=self.cweight, basis=self.basis,
        )
        return replace(result, symmetries=((slots, Parity(parity)),))

    def check_symmetries(self) -> bool:
        """声明的对称性逐分量成立"""
        for group, parity in self.symmetries:
            if not self.symmetrize(group, parity).equals(self):
                return False
        return True

    # ---------- 微分与分级 ----------

    def diff(self, var: Union[str, int]) -> "TensorField":
        return self.map(lambda c: self.chart.partial(c, var))

    def depends_only_on_x(self) -> bool:
        return all(self.chart.is_x_only(c) for c in self.components)

    def grade_in_p(self, d: int) -> "TensorField":
        """逐分量取 p 的 d 次齐次部分"""
        chart = self.chart
        ring = chart.field.ring

        def graded(c: Scalar) -> Scalar:
            if not chart.is_x_only(chart.field(c.denom)):
                raise GradingError("分母含 p，分量不是 p 的多项式")
            terms = {m: coeff for m, coeff in c.numer.terms() if total_p_degree(chart, m) == d}
            return chart.field.new(ring.from_dict(terms) if terms else ring.zero, c.denom)

        return self.map(graded)

    def p_degrees(self) -> List[int]:
        """出现的 p 次数（升序）"""
        degrees = set()
        for c in self.components:
            if not self.chart.is_x_only(self.chart.field(c.denom)):
                raise GradingError("分母含 p，分量不是 p 的多项式")
            degrees.update(total_p_degree(self.chart, m) for m in c.numer.monoms() if c.numer)
        return sorted(degrees)


def _indices(slots: Sequence[Slot]) -> Iterator[Index]:
    return itertools.product(*[range(s.dim) for s in slots])


def kron(i: int, j: int) -> int:
    return 1 if i == j else 0


def stack(chart: Chart, slots: Sequence[Slot], parts: Sequence[TensorField], head: Slot, **meta) -> TensorField:
    """把同形张量列表沿新的首槽位叠起来"""
    comps: Tuple[Scalar, ...] = ()
    for part in parts:
        comps += part.components
    return TensorField(chart, (head,) + tuple(slots), comps, **meta)
