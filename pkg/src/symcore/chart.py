"""
坐标图与精确有理函数域

M 上坐标 x1..xn，T*M 上再加纤维坐标 p1..pn。所有分量都是
QQ 上、grlex 序的有理函数域元素（sympy FracElement），运算后自动约分。
"""

from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, Tuple, Union

from sympy import QQ
from sympy.polys.fields import FracElement, field
from sympy.polys.orderings import grlex

from ..errors import DimensionError, UnknownVariableError

Scalar = FracElement
Number = Union[int, Fraction]


class Chart:
    """(x, p) 坐标图，持有有理函数域"""

    def __init__(self, n: int):
        if n < 1:
            raise DimensionError(f"维数必须 ≥ 1，得到 {n}")
        self.n = n
        self.names: Tuple[str, ...] = tuple(
            [f"x{i + 1}" for i in range(n)] + [f"p{i + 1}" for i in range(n)]
        )
        self.field, *gens = field(",".join(self.names), QQ, grlex)
        self.gens: Tuple[Scalar, ...] = tuple(gens)
        self._index = {name: i for i, name in enumerate(self.names)}
        self.zero = self.field.zero
        self.one = self.field.one

    def __repr__(self) -> str:
        return f"Chart(n={self.n})"

    def __eq__(self, other) -> bool:
        return isinstance(other, Chart) and other.n == self.n

    def __hash__(self) -> int:
        return hash(("Chart", self.n))

    # ---------- 变量 ----------

    def x(self, i: int) -> Scalar:
        """第 i 个底流形坐标（从 0 开始）"""
        return self.gens[i]

    def p(self, i: int) -> Scalar:
        """第 i 个纤维坐标（从 0 开始）"""
        return self.gens[self.n + i]

    def normalize_name(self, name: str) -> str:
        """p_2 → p2，x_1 → x1"""
        return name.replace("_", "")

    def index_of(self, name: str) -> int:
        key = self.normalize_name(name)
        if key not in self._index:
            raise UnknownVariableError(name, self.names)
        return self._index[key]

    def var(self, name: str) -> Scalar:
        return self.gens[self.index_of(name)]

    # ---------- 标量构造 ----------

    def const(self, a: Number, b: int = 1) -> Scalar:
        if isinstance(a, Fraction):
            return self.field(QQ(a.numerator, a.denominator * b))
        return self.field(QQ(a, b))

    def coerce(self, value) -> Scalar:
        """把 int / Fraction / 字符串 / 域元素统一成域元素"""
        if isinstance(value, FracElement):
            return value
        if isinstance(value, str):
            return self.parse(value)
        if isinstance(value, (int, Fraction)):
            return self.const(value)
        return self.field(value)

    def parse(self, text: str) -> Scalar:
        from .parser import parse_polynomial
        return parse_polynomial(self, text)

    # ---------- 微分与判定 ----------

    def partial(self, f: Scalar, var: Union[str, int]) -> Scalar:
        """精确偏导"""
        i = var if isinstance(var, int) else self.index_of(var)
        if not 0 <= i < 2 * self.n:
            raise UnknownVariableError(str(var), self.names)
        return f.diff(self.gens[i])

    def dx(self, f: Scalar, i: int) -> Scalar:
        return f.diff(self.gens[i])

    def dp(self, f: Scalar, i: int) -> Scalar:
        return f.diff(self.gens[self.n + i])

    def is_x_only(self, f: Scalar) -> bool:
        """只依赖 x 变量"""
        return all(
            not any(m[self.n:]) for poly in (f.numer, f.denom) for m in poly.monoms()
        )

    def substitute(self, f: Scalar, mapping: Dict[int, Scalar]) -> Scalar:
        """把第 i 个变量换成 mapping[i]（域元素）"""
        return self._substitute_poly(f.numer, mapping) / self._substitute_poly(f.denom, mapping)

    def _substitute_poly(self, poly, mapping: Dict[int, Scalar]) -> Scalar:
        total = self.zero
        for monom, coeff in poly.terms():
            term = self.field(coeff)
            for i, e in enumerate(monom):
                if e:
                    term = term * mapping.get(i, self.gens[i]) ** e
            total += term
        return total

    def value_at_origin(self, f: Scalar) -> Tuple[Fraction, Fraction]:
        """分子、分母在原点的值"""
        zero = (0,) * (2 * self.n)
        num = f.numer.get(zero, QQ.zero)
        den = f.denom.get(zero, QQ.zero)
        return to_fraction(num), to_fraction(den)


def is_zero(f: Scalar) -> bool:
    return not f.numer


def exact_equal(a: Scalar, b: Scalar) -> bool:
    """交叉相乘判等"""
    return a.numer * b.denom == b.numer * a.denom


def to_fraction(q) -> Fraction:
    return Fraction(int(QQ.numer(q)), int(QQ.denom(q)))


def total_p_degree(chart: Chart, monom: Iterable[int]) -> int:
    return sum(tuple(monom)[chart.n:])


@lru_cache(maxsize=None)
def get_chart(n: int) -> Chart:
    """同一维数共享一个 Chart"""
    return Chart(n)
