"""
规范序列化

单项式按 grlex 降序，系数写成 "a/b"，同一输入总得到同一字符串。
"""

from typing import List

from sympy import QQ

from .chart import Chart, Scalar, to_fraction
from .tensor import TensorField


def _format_coeff(q) -> str:
    f = to_fraction(q)
    if f.denominator == 1:
        return str(f.numerator)
    return f"{f.numerator}/{f.denominator}"


def _format_monomial(chart: Chart, monom) -> str:
    parts = []
    for name, exp in zip(chart.names, monom):
        if exp == 1:
            parts.append(name)
        elif exp > 1:
            parts.append(f"{name}^{exp}")
    return "*".join(parts)


def format_polynomial(chart: Chart, poly) -> str:
    if not poly:
        return "0"
    out: List[str] = []
    for monom, coeff in poly.terms():
        negative = coeff < 0
        mag = -coeff if negative else coeff
        mono = _format_monomial(chart, monom)
        if not mono:
            body = _format_coeff(mag)
        elif mag == QQ.one:
            body = mono
        else:
            body = f"{_format_coeff(mag)}*{mono}"
        if not out:
            out.append(f"-{body}" if negative else body)
        else:
            out.append(f" - {body}" if negative else f" + {body}")
    return "".join(out)


def format_scalar(chart: Chart, f: Scalar) -> str:
    """有理函数 → 规范字符串"""
    num, den = f.numer, f.denom
    if not num:
        return "0"
    if den.is_ground:
        return format_polynomial(chart, num.quo_ground(den.LC))
    lc = den.LC
    num, den = num.quo_ground(lc), den.quo_ground(lc)
    return f"({format_polynomial(chart, num)})/({format_polynomial(chart, den)})"


def format_tensor(t: TensorField) -> str:
    """只列非零分量，按指标字典序；零张量得到空串"""
    lines = []
    for idx, value in t.nonzero():
        key = ",".join(str(i) for i in idx)
        lines.append(f"[{key}]: {format_scalar(t.chart, value)}")
    return "; ".join(lines)
