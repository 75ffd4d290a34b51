"""
Λ(R^n) 上的 Spin(n,n) 旋量模

基旋量 e_S 以位掩码 S 编号（第 A 位表示含 e_A）。适配标架下
γ(H_A) = e_A∧，γ(V_A) = −2 ι_A，满足 {γ_a, γ_b} = −2 G_ab。
H 方向升外次数，V 方向降外次数。
"""

from dataclasses import dataclass, replace
from enum import Enum
from functools import lru_cache
from typing import Callable, Dict, List, Sequence, Tuple

from sympy import Matrix

from ..errors import SlotMismatchError
from ..symcore import Chart, Scalar
from ..symcore.tensor import Space

# (目标基, 源基) → 整数系数
GammaTable = Dict[Tuple[int, int], int]


class Chirality(str, Enum):
    PLUS = "plus"     # 偶次
    MINUS = "minus"   # 奇次
    FULL = "full"


def degree(mask: int) -> int:
    return bin(mask).count("1")


def _sign_before(mask: int, a: int) -> int:
    """(−1)^{S 中小于 a 的元素个数}"""
    return -1 if degree(mask & ((1 << a) - 1)) % 2 else 1


@dataclass(frozen=True)
class Spinor:
    """旋量（列向量）或对偶旋量（行向量），分量按位掩码排列"""
    chart: Chart
    components: Tuple[Scalar, ...]
    dual: bool = False
    cweight: int = 0

    @classmethod
    def zeros(cls, chart: Chart, dual: bool = False, cweight: int = 0) -> "Spinor":
        return cls(chart, (chart.zero,) * (1 << chart.n), dual, cweight)

    @classmethod
    def from_dict(cls, chart: Chart, entries: Dict[int, object], dual: bool = False, cweight: int = 0) -> "Spinor":
        comps = tuple(chart.coerce(entries.get(m, 0)) for m in range(1 << chart.n))
        return cls(chart, comps, dual, cweight)

    def __getitem__(self, mask: int) -> Scalar:
        return self.components[mask]

    def _check(self, other: "Spinor") -> None:
        if self.dual != other.dual or len(self.components) != len(other.components):
            raise SlotMismatchError("旋量与对偶旋量不能相加")

    def __add__(self, other: "Spinor") -> "Spinor":
        self._check(other)
        return replace(self, components=tuple(a + b for a, b in zip(self.components, other.components)))

    def __sub__(self, other: "Spinor") -> "Spinor":
        self._check(other)
        return replace(self, components=tuple(a - b for a, b in zip(self.components, other.components)))

    def __neg__(self) -> "Spinor":
        return replace(self, components=tuple(-a for a in self.components))

    def scale(self, factor) -> "Spinor":
        c = self.chart.coerce(factor)
        return replace(self, components=tuple(c * a for a in self.components))

    __rmul__ = scale

    def map(self, fn: Callable[[Scalar], Scalar]) -> "Spinor":
        return replace(self, components=tuple(fn(a) for a in self.components))

    def is_zero(self) -> bool:
        return not any(c.numer for c in self.components)

    def nonzero(self) -> List[Tuple[int, Scalar]]:
        return [(m, c) for m, c in enumerate(self.components) if c.numer]

    @property
    def chirality(self) -> Chirality:
        odd = any(c.numer for m, c in enumerate(self.components) if degree(m) % 2)
        even = any(c.numer for m, c in enumerate(self.components) if not degree(m) % 2)
        if odd and even:
            return Chirality.FULL
        return Chirality.MINUS if odd else Chirality.PLUS

    @property
    def space(self) -> Space:
        """整体手性对应的槽位空间；FULL 时按偶部记"""
        plus = self.chirality != Chirality.MINUS
        if self.dual:
            return Space.DUAL_SPINOR_PLUS if plus else Space.DUAL_SPINOR_MINUS
        return Space.SPINOR_PLUS if plus else Space.SPINOR_MINUS

    def pair(self, other: "Spinor") -> Scalar:
        """对偶旋量作用在旋量上"""
        if not self.dual or other.dual:
            raise SlotMismatchError("pair 需要 (对偶旋量, 旋量)")
        total = self.chart.zero
        for a, b in zip(self.components, other.components):
            if a.numer and b.numer:
                total += a * b
        return total


class CliffordModule:
    """gamma 作用表，标架指标 a < n 为 H_A，a ≥ n 为 V_A"""

    def __init__(self, chart: Chart):
        self.chart = chart
        self.n = chart.n
        self.dim = 1 << chart.n
        self.tables: List[GammaTable] = [self._table(a) for a in range(2 * self.n)]

    def __repr__(self) -> str:
        return f"CliffordModule(n={self.n})"

    def _table(self, a: int) -> GammaTable:
        n = self.n
        table: GammaTable = {}
        base = a if a < n else a - n
        bit = 1 << base
        for mask in range(self.dim):
            sign = _sign_before(mask, base)
            if a < n and not mask & bit:
                table[(mask | bit, mask)] = sign
            elif a >= n and mask & bit:
                table[(mask ^ bit, mask)] = -2 * sign
        return table

    # ---------- 指标 ----------

    def frame_metric(self, a: int, b: int) -> int:
        n = self.n
        return 1 if (a < n <= b and b - n == a) or (b < n <= a and a - n == b) else 0

    def raised(self, a: int) -> int:
        """γ^a = γ_{a'}：H_A ↔ V_A"""
        return a + self.n if a < self.n else a - self.n

    # ---------- 作用 ----------

    def act(self, a: int, psi: Spinor) -> Spinor:
        """γ_a ψ（列向量），或 φ γ_a（行向量）"""
        chart = self.chart
        out = [chart.zero] * self.dim
        for (dst, src), coeff in self.tables[a].items():
            if psi.dual:
                value = psi.components[dst]
                if value.numer:
                    out[src] += coeff * value
            else:
                value = psi.components[src]
                if value.numer:
                    out[dst] += coeff * value
        return replace(psi, components=tuple(out))

    def act_up(self, a: int, psi: Spinor) -> Spinor:
        return self.act(self.raised(a), psi)

    def act_word(self, word: Sequence[int], psi: Spinor, upper: bool = False) -> Spinor:
        """γ_{a1}γ_{a2}…ψ；行向量按 φγ_{a1}γ_{a2}… 的次序右乘"""
        order = list(word) if psi.dual else list(reversed(word))
        for a in order:
            psi = self.act_up(a, psi) if upper else self.act(a, psi)
        return psi

    def basis_spinor(self, mask: int, dual: bool = False) -> Spinor:
        return Spinor.from_dict(self.chart, {mask: 1}, dual=dual)

    # ---------- 检查 ----------

    def clifford_violations(self) -> List[Tuple[int, int, int]]:
        """(a, b, 基) 上 γ_aγ_b + γ_bγ_a + 2 G_ab 不为零的组合"""
        bad = []
        for a in range(2 * self.n):
            for b in range(a, 2 * self.n):
                for mask in range(self.dim):
                    e = self.basis_spinor(mask)
                    lhs = self.act_word((a, b), e) + self.act_word((b, a), e) + e.scale(2 * self.frame_metric(a, b))
                    if not lhs.is_zero():
                        bad.append((a, b, mask))
        return bad

    def degree_shift_ok(self) -> bool:
        """H 升一次，V 降一次"""
        for a, table in enumerate(self.tables):
            shift = 1 if a < self.n else -1
            if any(degree(dst) - degree(src) != shift for dst, src in table):
                return False
        return True

    def annihilator_matrix(self, psi: Spinor) -> Matrix:
        """第 a 列是 γ_a ψ 的分量"""
        columns = [self.act(a, psi).components for a in range(2 * self.n)]
        return Matrix(self.dim, 2 * self.n, lambda i, a: columns[a][i].as_expr())

    def purity_rank(self, psi: Spinor) -> int:
        """零化子维数 dim ker(v ↦ γ(v)ψ)"""
        return 2 * self.n - self.annihilator_matrix(psi).rank()


@lru_cache(maxsize=None)
def clifford_module(chart: Chart) -> CliffordModule:
    return CliffordModule(chart)
