"""
多项式 / 有理函数字面量解析（arpeggio PEG 语法）

    polynomial := expr EOF
    expr       := term (addop term)*
    term       := unary (mulop unary)*
    unary      := addop unary | power
    power      := atom (caret exponent_value?)?
    atom       := integer | name | '(' expr ')'

例: "3/4*x1^2*p_2 - x3"。系数 "a/b" 直接按除法处理。
语法里的每个序列都是具名规则，访问器拿到的 children 结构固定。
"""

import threading
from typing import Optional

from arpeggio import EOF, NoMatch, Optional as Opt, ParserPython, PTNodeVisitor, ZeroOrMore, visit_parse_tree
from arpeggio import RegExMatch as _

from ..errors import PolynomialSyntaxError, UnknownVariableError
from .chart import Chart, Scalar


def integer():        return _(r"\d+")
def name():           return _(r"[A-Za-z_][A-Za-z_0-9]*")
def exponent_value(): return _(r"-?\d+")
def caret():          return _(r"\^|\*\*")
def mulop():          return _(r"\*(?!\*)|/")
def addop():          return _(r"[+-]")
def lparen():         return _(r"\(")
def rparen():         return _(r"\)")
def group():          return lparen, expr, rparen
def atom():           return [integer, name, group]
def exponent():       return caret, Opt(exponent_value)
def power():          return atom, Opt(exponent)
def signed():         return addop, unary
def unary():          return [signed, power]
def term():           return unary, ZeroOrMore(mulop, unary)
def expr():           return term, ZeroOrMore(addop, term)
def polynomial():     return expr, EOF


# arpeggio 的解析器对象带状态，多线程共用时串行化
_PARSER_LOCK = threading.Lock()
_PARSER: Optional[ParserPython] = None


def _get_parser() -> ParserPython:
    global _PARSER
    if _PARSER is None:
        _PARSER = ParserPython(polynomial, skipws=True)
    return _PARSER


class _Evaluator(PTNodeVisitor):
    """自底向上求值；运算符节点带上位置，便于报错"""

    def __init__(self, chart: Chart, text: str):
        super().__init__()
        self.chart = chart
        self.text = text

    def _fail(self, message: str, position: int, token: str) -> None:
        raise PolynomialSyntaxError(message, self.text, position + 1, token=token)

    def visit_integer(self, node, children):
        return self.chart.const(int(node.value))

    def visit_name(self, node, children):
        try:
            return self.chart.var(node.value)
        except UnknownVariableError:
            self._fail(f"未知变量 {node.value}", node.position, node.value)

    def visit_exponent_value(self, node, children):
        return int(node.value)

    def visit_caret(self, node, children):
        return node.position, node.value

    def visit_mulop(self, node, children):
        return node.value, node.position

    def visit_addop(self, node, children):
        return node.value, node.position

    def visit_lparen(self, node, children):
        return None

    def visit_rparen(self, node, children):
        return None

    def visit_group(self, node, children):
        return children[0]

    def visit_atom(self, node, children):
        return children[0]

    def visit_exponent(self, node, children):
        (position, token), rest = children[0], children[1:]
        if not rest:
            self._fail("指数必须是整数", position, token)
        return rest[0], position

    def visit_power(self, node, children):
        base = children[0]
        if len(children) == 1:
            return base
        exponent, position = children[1]
        if exponent < 0 and not base.numer:
            self._fail("零的负数次幂", position, self.text[position])
        return base ** exponent

    def visit_signed(self, node, children):
        (op, _pos), value = children
        return -value if op == "-" else value

    def visit_unary(self, node, children):
        return children[0]

    def visit_term(self, node, children):
        value = children[0]
        for (op, position), operand in zip(children[1::2], children[2::2]):
            if op == "*":
                value = value * operand
            else:
                if not operand.numer:
                    self._fail("除以零", position, op)
                value = value / operand
        return value

    def visit_expr(self, node, children):
        value = children[0]
        for (op, _pos), operand in zip(children[1::2], children[2::2]):
            value = value + operand if op == "+" else value - operand
        return value

    def visit_polynomial(self, node, children):
        return children[0]


def parse_polynomial(chart: Chart, text: str) -> Scalar:
    """把字符串解析成域元素，错误带行列号"""
    if not isinstance(text, str):
        text = str(text)
    with _PARSER_LOCK:
        try:
            tree = _get_parser().parse(text)
        except NoMatch as e:
            pos = e.position
            line = text.count("\n", 0, pos) + 1
            column = pos - (text.rfind("\n", 0, pos) + 1) + 1
            token = text[pos] if pos < len(text) else ""
            message = "空表达式" if not text.strip() else "无法识别的记号"
            raise PolynomialSyntaxError(message, text, column, line=line, token=token) from None
    return visit_parse_tree(tree, _Evaluator(chart, text))
