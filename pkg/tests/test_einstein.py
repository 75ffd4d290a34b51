import pytest

from src.einstein import (
    ConformalScale, aes_residual, decompose_scale, key_display_parts, lie_derivative_scale, lift_minus,
    lift_plus, rescaled_schouten_trace, scale_eigen_residuals, solve_scales,
)
from src.errors import PreconditionError, SlotMismatchError
from src.projective import make_solution


def test_e2_lifts_are_almost_einstein(pw_e2, chart2):
    plus = lift_plus(pw_e2, make_solution(chart2, "euler", ["0", "1"]))
    minus = lift_minus(pw_e2, make_solution(chart2, "ricciflat", "x2"))
    assert plus.value == chart2.p(1)
    assert minus.value == chart2.x(1)
    for sigma, sign in ((plus, 1), (minus, -1)):
        assert aes_residual(pw_e2, sigma).is_zero()
        assert lie_derivative_scale(pw_e2, sigma) == sign * sigma.value
        assert all(not r.numer for r in scale_eigen_residuals(pw_e2, sigma).values())
        assert rescaled_schouten_trace(pw_e2, sigma) == chart2.zero


def test_lift_preconditions(pw_e2, chart2):
    with pytest.raises(SlotMismatchError):
        lift_plus(pw_e2, make_solution(chart2, "ricciflat", "x2"))
    with pytest.raises(SlotMismatchError):
        lift_minus(pw_e2, make_solution(chart2, "euler", ["0", "1"]))
    with pytest.raises(PreconditionError) as err:
        lift_minus(pw_e2, make_solution(chart2, "ricciflat", "x1"))
    assert err.value.condition == "base-residual"


def test_decompose_sum_of_lifts(pw_e2, chart2):
    parts = decompose_scale(pw_e2, ConformalScale.of(chart2, "p2 + x2"))
    assert parts.plus.value == chart2.p(1)
    assert parts.minus.value == chart2.x(1)
    xi = parts.xi.data
    assert (xi[0], xi[1]) == (chart2.zero, chart2.one)
    assert parts.sigma.data.value() == chart2.x(1)


def test_decompose_rejects_non_scale(pw_flat2, chart2):
    with pytest.raises(PreconditionError) as err:
        decompose_scale(pw_flat2, ConformalScale.of(chart2, "x1^2"))
    assert err.value.condition == "aes-residual"


def test_key_display_parts(pw_flat2, chart2):
    good = key_display_parts(pw_flat2, make_solution(chart2, "euler", ["x1", "x2"]).data)
    assert all(part.is_zero() for part in good.values())
    bad = key_display_parts(pw_flat2, make_solution(chart2, "euler", ["x1^2", "0"]).data)
    assert not bad["Dxi0"].is_zero()


def test_solved_scales_lift(e2, pw_e2):
    found = solve_scales(e2, 1)
    assert found.euler and found.ricciflat
    for sol in found.euler:
        assert aes_residual(pw_e2, lift_plus(pw_e2, sol)).is_zero()
    for sol in found.ricciflat:
        assert aes_residual(pw_e2, lift_minus(pw_e2, sol)).is_zero()


def test_flat_scale_dimensions(flat2):
    assert solve_scales(flat2, 2).dimensions == {"euler": 3, "ricciflat": 3}


def test_flat_lifts_and_decomposition(pw_flat2, chart2):
    x1, x2, p1, p2 = chart2.x(0), chart2.x(1), chart2.p(0), chart2.p(1)
    plus = lift_plus(pw_flat2, make_solution(chart2, "euler", ["x1", "x2"]))
    minus = lift_minus(pw_flat2, make_solution(chart2, "ricciflat", "x1"))
    assert plus.value == x1 * p1 + x2 * p2
    assert minus.value == x1
    for sigma in (plus, minus):
        assert aes_residual(pw_flat2, sigma).is_zero()
    parts = decompose_scale(pw_flat2, ConformalScale.of(chart2, "x1*p1 + x2*p2 + x1"))
    assert (parts.plus.value, parts.minus.value) == (plus.value, minus.value)
    assert (parts.xi.data[0], parts.xi.data[1]) == (x1, x2)
    assert parts.sigma.data.value() == x1


def test_e3_lifts_and_decomposition(pw_e3, chart3):
    plus = lift_plus(pw_e3, make_solution(chart3, "euler", ["0", "1", "0"]))
    minus = lift_minus(pw_e3, make_solution(chart3, "ricciflat", "x1 + x3"))
    assert plus.value == chart3.p(1)
    assert minus.value == chart3.x(0) + chart3.x(2)
    for sigma, sign in ((plus, 1), (minus, -1)):
        assert aes_residual(pw_e3, sigma).is_zero()
        assert lie_derivative_scale(pw_e3, sigma) == sign * sigma.value
        assert rescaled_schouten_trace(pw_e3, sigma) == chart3.zero
    assert pw_e3.schouten.is_zero()
    parts = decompose_scale(pw_e3, ConformalScale.of(chart3, "p2 + x1 + x3"))
    xi = parts.xi.data
    assert (xi[0], xi[1], xi[2]) == (chart3.zero, chart3.one, chart3.zero)
    assert parts.sigma.data.value() == minus.value
