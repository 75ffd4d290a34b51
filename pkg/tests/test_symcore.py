import pytest
from hypothesis import given, settings, strategies as st

from src.errors import GradingError, PolynomialSyntaxError
from src.symcore import (
    Parity, TensorField, down, format_scalar, format_tensor, get_chart, is_zero, polynomial_basis,
    solve_linear_ansatz, up, up_t, x_monomials,
)

CHART = get_chart(2)

_terms = st.lists(
    st.tuples(st.integers(-3, 3), st.integers(0, 2), st.integers(0, 2), st.integers(0, 2), st.integers(0, 2)),
    min_size=1, max_size=4,
)


def _poly(terms):
    total = CHART.zero
    for c, a, b, d, e in terms:
        total += c * CHART.x(0) ** a * CHART.x(1) ** b * CHART.p(0) ** d * CHART.p(1) ** e
    return total


polys = _terms.map(_poly)


@settings(max_examples=30, deadline=None)
@given(polys, polys, polys)
def test_field_axioms(f, g, h):
    assert f + g == g + f
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    if f.numer:
        assert (g / f) * f == g


@settings(max_examples=30, deadline=None)
@given(polys)
def test_partials_commute(f):
    for i in range(4):
        for j in range(4):
            assert CHART.partial(CHART.partial(f, i), j) == CHART.partial(CHART.partial(f, j), i)


@settings(max_examples=30, deadline=None)
@given(polys)
def test_grading_sums_back(f):
    t = TensorField.scalar(CHART, f)
    total = CHART.zero
    for d in t.p_degrees():
        total += t.grade_in_p(d).value()
    assert total == f


def test_parse_and_canonical_form():
    f = CHART.parse("3/4*x1^2*p_2 - x2")
    assert format_scalar(CHART, f) == "3/4*x1^2*p2 - x2"
    assert format_scalar(CHART, CHART.parse("x1 - x1")) == "0"
    # 分母首项系数归一
    assert format_scalar(CHART, CHART.parse("1/(2*x1)")) == "(1/2)/(x1)"


def test_parse_error_reports_column():
    with pytest.raises(PolynomialSyntaxError) as err:
        CHART.parse("x1^")
    assert err.value.column == 3
    assert err.value.token == "^"


def test_parse_rejects_unknown_variable():
    with pytest.raises(PolynomialSyntaxError) as err:
        CHART.parse("x1 + y1")
    assert err.value.column == 6


def test_grading_rejects_p_in_denominator():
    t = TensorField.scalar(CHART, CHART.parse("1/p1"))
    with pytest.raises(GradingError):
        t.p_degrees()


def test_format_tensor_lists_nonzero_components():
    t = TensorField.from_nested(CHART, (down(2), down(2)), [["1", "0"], ["0", "x1/2"]])
    assert format_tensor(t) == "[0,0]: 1; [1,1]: 1/2*x1"
    assert format_tensor(t.scale(0)) == ""


def test_symmetrize_and_contract():
    t = TensorField.from_nested(CHART, (up(2), down(2)), [["x1", "1"], ["0", "x2"]])
    assert t.contract(0, 1).value() == CHART.parse("x1 + x2")
    lowered = TensorField.from_nested(CHART, (down(2), down(2)), [["0", "1"], ["3", "0"]])
    sym = lowered.symmetrize((0, 1), Parity.SYM)
    assert sym[0, 1] == CHART.const(2)
    assert is_zero(lowered.symmetrize((0, 1), Parity.ANTISYM)[0, 0])


def test_x_monomials_count():
    assert len(x_monomials(CHART, 2)) == 6
    assert len(x_monomials(get_chart(3), 2)) == 10


def test_linear_ansatz_finds_constant_fields():
    """∂_A f = 0 的次数 ≤ 2 解只有常数"""
    basis = polynomial_basis(CHART, (), 2)
    sols = solve_linear_ansatz(
        CHART, basis,
        lambda f: TensorField.from_function(CHART, (down(2),), lambda a: CHART.dx(f.value(), a)),
    )
    assert len(sols) == 1
    assert sols[0].value() != CHART.zero and CHART.is_x_only(sols[0].value())
    assert CHART.dx(sols[0].value(), 0) == CHART.zero


def test_mtilde_slots_are_twice_as_long():
    v = TensorField.from_function(CHART, (up_t(2),), lambda mu: mu)
    assert v.shape == (4,)
