import pytest

from src.errors import NotSpecialError, PreconditionError
from src.projective import (
    SolutionKind, affine_bivector_residuals, covariant_derivative, curvature, dualize_lowdim,
    integrability_residuals, is_projectively_flat, is_special, make_solution, projective_rescale, prolong,
    prolonged_residuals, solution_residual, solve_solutions, special_part, thomas_parameters,
    transform_solution, weyl_cotton,
)
from src.einstein import solve_scales


def test_e2_curvature(e2, chart2):
    c = curvature(e2)
    assert c.ricci[0, 0] == chart2.one
    assert c.schouten[0, 0] == chart2.one
    assert [idx for idx, _ in c.ricci.nonzero()] == [(0, 0)]
    wc = weyl_cotton(e2)
    assert wc.weyl.is_zero()
    assert wc.cotton.is_zero()


def test_e3_is_ricci_flat_with_weyl_equal_riemann(e3):
    c = curvature(e3)
    assert c.ricci.is_zero()
    assert (weyl_cotton(e3).weyl - c.riemann).is_zero()
    assert not is_projectively_flat(e3)


def test_cotton_n2(cotton2, chart2):
    assert curvature(cotton2).schouten[0, 0] == 2 * chart2.x(1)
    Y = weyl_cotton(cotton2).cotton
    assert Y[0, 1, 0] == chart2.const(2)
    assert Y[0, 0, 1] == chart2.const(-2)


def test_special_part_of_nonspecial(nonspecial2, chart2):
    assert not is_special(nonspecial2)
    upsilon, special = special_part(nonspecial2)
    assert upsilon[0] == -chart2.x(1) / 3
    assert upsilon[1] == chart2.zero
    assert is_special(special)
    assert (thomas_parameters(special) - thomas_parameters(nonspecial2)).is_zero()


def test_weyl_needs_special(nonspecial2):
    with pytest.raises(NotSpecialError):
        weyl_cotton(nonspecial2)


@pytest.mark.parametrize("s", ["1 + x1", "1 + x1^2 + x2"])
def test_projective_invariants(e3, nonspecial2, s):
    hat = projective_rescale(e3, e3.chart.parse(s))
    assert is_special(hat)
    assert (weyl_cotton(hat).weyl - weyl_cotton(e3).weyl).is_zero()
    other = projective_rescale(nonspecial2, nonspecial2.chart.parse(s))
    assert (thomas_parameters(other) - thomas_parameters(nonspecial2)).is_zero()


def test_e2_base_solutions(e2, chart2):
    xi = make_solution(chart2, "euler", ["0", "1"])
    assert covariant_derivative(e2, xi.data).is_zero()
    alpha = make_solution(chart2, "killing", ["1", "0"])
    assert covariant_derivative(e2, alpha.data).is_zero()
    for sol in (
        xi, alpha,
        make_solution(chart2, "ricciflat", "x2"),
        make_solution(chart2, "bivector", [["0", "x2"], ["-x2", "0"]]),
        make_solution(chart2, "affine-symmetry", ["1", "0"]),
        make_solution(chart2, "projective-symmetry", ["1", "0"]),
    ):
        assert solution_residual(e2, sol).is_zero(), sol.kind
        assert all(r.is_zero() for r in integrability_residuals(e2, sol).values())


def test_e2_non_solutions(e2, chart2):
    assert not solution_residual(e2, make_solution(chart2, "projective-symmetry", ["0", "1"])).is_zero()
    w = make_solution(chart2, "bivector", [["0", "x2"], ["-x2", "0"]])
    assert not affine_bivector_residuals(e2, w.data)["Dw"].is_zero()


def test_flat_projective_residual_value(flat2, chart2):
    bad = make_solution(chart2, "projective-symmetry", ["x1^2", "0"])
    assert solution_residual(flat2, bad)[0, 0, 0] == chart2.const(2, 3)
    with pytest.raises(PreconditionError):
        prolong(flat2, bad)


def test_bivector_prolongation(e2, chart2):
    w = prolong(e2, make_solution(chart2, "bivector", [["0", "x2"], ["-x2", "0"]]))
    nu = w.prolongation["nu"]
    assert (nu[0], nu[1]) == (chart2.const(-1), chart2.zero)
    assert all(r.is_zero() for r in prolonged_residuals(e2, w).values())


def test_symmetry_prolongation_closes(flat2, chart2):
    v = prolong(flat2, make_solution(chart2, "projective-symmetry", ["x1^2", "x1*x2"]))
    assert all(r.is_zero() for r in prolonged_residuals(flat2, v).values())


@pytest.mark.parametrize("kind, dim", [
    (SolutionKind.EULER, 3),
    (SolutionKind.RICCIFLAT, 3),
    (SolutionKind.KILLING, 3),
    (SolutionKind.PROJECTIVE, 8),
    (SolutionKind.AFFINE, 6),
    (SolutionKind.BIVECTOR, 3),
])
def test_flat_solution_dimensions(flat2, kind, dim):
    assert len(solve_solutions(flat2, kind, 2)) == dim


def test_e3_scale_dimensions(e3):
    found = solve_scales(e3, 2)
    assert found.dimensions == {"euler": 1, "ricciflat": 3}
    xi = found.euler[0].data
    assert xi[0].numer == 0 and xi[2].numer == 0 and xi[1].numer != 0


def test_lowdim_duality(e2, chart2):
    xi = make_solution(chart2, "euler", ["0", "1"])
    alpha = dualize_lowdim(e2, xi)
    assert alpha.kind == SolutionKind.KILLING
    assert (alpha.data[0], alpha.data[1]) == (chart2.const(-1), chart2.zero)
    assert (dualize_lowdim(e2, alpha).data - xi.data).is_zero()
    sigma = dualize_lowdim(e2, make_solution(chart2, "bivector", [["0", "x2"], ["-x2", "0"]]))
    assert sigma.kind == SolutionKind.RICCIFLAT
    assert sigma.data.value() == chart2.x(1)


@pytest.mark.parametrize("kind, comps", [
    ("projective-symmetry", ["1", "0"]),
    ("euler", ["0", "1"]),
    ("killing", ["1", "0"]),
    ("bivector", [["0", "x2"], ["-x2", "0"]]),
])
def test_transformed_solutions_stay_solutions(e2, chart2, kind, comps):
    sol = make_solution(chart2, kind, comps)
    D_hat, sol_hat = transform_solution(e2, chart2.parse("1 + x1"), sol)
    assert solution_residual(D_hat, sol_hat).is_zero()


def test_integrability_is_solved_with_the_equation(e3):
    joint = solve_solutions(e3, SolutionKind.EULER, 2)
    loose = solve_solutions(e3, SolutionKind.EULER, 2, integrable_only=False)
    assert len(joint) == solve_scales(e3, 2).dimensions["euler"] == 1
    assert len(loose) >= len(joint)
    for sol in joint:
        assert all(r.is_zero() for r in integrability_residuals(e3, sol).values())
