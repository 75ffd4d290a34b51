import pytest

from src.errors import DimensionError, PreconditionError, SlotMismatchError
from src.projective import make_solution
from src.symmetry import (
    LiftMode, LiftPart, affine_homothety_remark, ck_prolongation, ck_prolongation_identities, ck_residual,
    decompose, killing_lift_norms, killing_residual, lie_cubic_residual, lie_eigen_residual, lift_affine,
    lift_conformal, lift_invariance_check, lightlike_geodetic, mu_scalar, n3_bivector_to_oneform, tangency,
)

E2_DATA = {
    "projective-symmetry": ["1", "0"],
    "bivector": [["0", "x2"], ["-x2", "0"]],
    "killing": ["1", "0"],
}


def _e2_solution(chart2, kind):
    return make_solution(chart2, kind, E2_DATA[kind])


def test_k_is_conformal_killing(pw_e2, pw_flat3):
    for P in (pw_e2, pw_flat3):
        assert ck_residual(P, P.k_vector).is_zero()
        assert mu_scalar(P, P.k_vector) == P.chart.const(-2 * (P.n + 1))


@pytest.mark.parametrize("kind, part", [
    ("projective-symmetry", LiftPart.ZERO),
    ("bivector", LiftPart.PLUS),
    ("killing", LiftPart.MINUS),
])
def test_conformal_lifts_on_e2(pw_e2, chart2, kind, part):
    cand = lift_conformal(pw_e2, _e2_solution(chart2, kind))
    assert cand.part == part
    assert ck_residual(pw_e2, cand.vector).is_zero()
    assert lie_eigen_residual(pw_e2, cand.vector, cand.eigenvalue).is_zero()
    assert lie_cubic_residual(pw_e2, cand.vector).is_zero()


def test_tangency_of_plus_and_minus_lifts(pw_e2, chart2):
    assert tangency(pw_e2, lift_conformal(pw_e2, _e2_solution(chart2, "killing"))).is_zero()
    assert tangency(pw_e2, lift_conformal(pw_e2, _e2_solution(chart2, "bivector"))).is_zero()
    with pytest.raises(PreconditionError):
        tangency(pw_e2, lift_conformal(pw_e2, _e2_solution(chart2, "projective-symmetry")))


def test_lift_rejects_non_solutions(pw_e2, chart2):
    with pytest.raises(PreconditionError):
        lift_conformal(pw_e2, make_solution(chart2, "projective-symmetry", ["0", "1"]))
    with pytest.raises(SlotMismatchError):
        lift_conformal(pw_e2, make_solution(chart2, "euler", ["0", "1"]))


def test_ck_prolongation_closes_on_ricci_flat_lift(pw_e3, chart3):
    X = lift_conformal(pw_e3, make_solution(chart3, "projective-symmetry", ["0", "1", "0"])).vector
    pr = ck_prolongation(pw_e3, X)
    assert all(r.is_zero() for r in ck_prolongation_identities(pw_e3, X, pr).values())


def test_affine_lifts_are_killing(pw_flat2, chart2):
    for kind, comps in (
        ("affine-symmetry", ["x1", "0"]),
        ("bivector", [["0", "1"], ["-1", "0"]]),
        ("killing", ["x2", "-x1"]),
    ):
        cand = lift_affine(pw_flat2, make_solution(chart2, kind, comps))
        assert killing_residual(pw_flat2, cand.vector).is_zero(), kind


def test_non_parallel_bivector_has_no_affine_lift(pw_e2, chart2):
    with pytest.raises(PreconditionError):
        lift_affine(pw_e2, _e2_solution(chart2, "bivector"))


def test_decompose_recovers_base_data(pw_e2, chart2):
    parts = {kind: lift_conformal(pw_e2, _e2_solution(chart2, kind)).vector for kind in E2_DATA}
    X = parts["projective-symmetry"] + parts["bivector"] + parts["killing"] + pw_e2.k_vector
    d = decompose(pw_e2, X)
    assert d.c == chart2.one
    assert (d.zero - parts["projective-symmetry"]).is_zero()
    assert (d.v.data[0], d.v.data[1]) == (chart2.one, chart2.zero)
    assert d.w.data[0, 1] == chart2.x(1)
    assert (d.alpha.data[0], d.alpha.data[1]) == (chart2.one, chart2.zero)
    assert not d.mu_check.numer


def test_decompose_rejects_non_killing(pw_flat2, chart2):
    X = pw_flat2.vector_from_frame([chart2.x(0), chart2.zero, chart2.zero, chart2.zero])
    with pytest.raises(PreconditionError):
        decompose(pw_flat2, X)


def test_lightlike_projective_symmetry(pw_flat2, chart2):
    report = lightlike_geodetic(pw_flat2, make_solution(chart2, "projective-symmetry", ["x1^2", "x1*x2"]))
    assert report.ok()
    assert report.lightlike
    assert report.geodetic


def test_affine_lift_norm(pw_flat2, chart2):
    u = make_solution(chart2, "affine-symmetry", ["x1", "0"])
    report = lightlike_geodetic(pw_flat2, u, LiftMode.KILLING)
    assert report.norm == -2 * chart2.x(0) * chart2.p(0)
    assert report.ok()
    assert not report.lightlike
    assert killing_lift_norms(pw_flat2, u) == chart2.zero


def test_affine_symmetry_lifts_to_homothety(pw_flat2, chart2):
    remark = affine_homothety_remark(pw_flat2, make_solution(chart2, "affine-symmetry", ["x1", "0"]))
    assert all(r.is_zero() for r in remark.values())


def test_n3_bivector_duality(pw_flat3, chart3, pw_e2, chart2):
    w = make_solution(chart3, "bivector", [["0", "1", "0"], ["-1", "0", "0"], ["0", "0", "0"]])
    assert n3_bivector_to_oneform(pw_flat3, w).is_zero()
    with pytest.raises(DimensionError):
        n3_bivector_to_oneform(pw_e2, _e2_solution(chart2, "bivector"))


@pytest.mark.parametrize("kind, comps", [
    ("projective-symmetry", ["1", "0"]),
    ("bivector", [["0", "x2"], ["-x2", "0"]]),
    ("killing", ["1", "0"]),
    ("euler", ["0", "1"]),
    ("ricciflat", "x2"),
])
def test_lift_invariance(e2, chart2, kind, comps):
    assert lift_invariance_check(e2, "1 + x1", make_solution(chart2, kind, comps)).ok()


@pytest.mark.parametrize("comps", [["0", "1", "0"], ["1", "0", "0"]])
def test_conformal_lifts_on_e3(pw_e3, chart3, comps):
    cand = lift_conformal(pw_e3, make_solution(chart3, "projective-symmetry", comps))
    assert cand.part == LiftPart.ZERO
    assert ck_residual(pw_e3, cand.vector).is_zero()
    assert lie_eigen_residual(pw_e3, cand.vector, 0).is_zero()
    assert mu_scalar(pw_e3, cand.vector) == chart3.zero


@pytest.mark.parametrize("geometry, kind, comps", [
    ("pw_e2", "affine-symmetry", ["1", "0"]),
    ("pw_e2", "killing", ["1", "0"]),
    ("pw_e3", "affine-symmetry", ["1", "0", "0"]),
    ("pw_e3", "affine-symmetry", ["0", "1", "0"]),
])
def test_affine_lifts_on_curved_bases(request, geometry, kind, comps):
    P = request.getfixturevalue(geometry)
    cand = lift_affine(P, make_solution(P.chart, kind, comps))
    assert killing_residual(P, cand.vector).is_zero()
    assert lie_eigen_residual(P, cand.vector, cand.eigenvalue).is_zero()


def test_killing_mode_decomposition_has_no_k_part(pw_e2, chart2):
    v = lift_affine(pw_e2, make_solution(chart2, "affine-symmetry", ["1", "0"])).vector
    alpha = lift_affine(pw_e2, make_solution(chart2, "killing", ["1", "0"])).vector
    d = decompose(pw_e2, v + alpha, LiftMode.KILLING)
    assert d.c == chart2.zero
    assert d.w is None
    assert (d.v.data[0], d.v.data[1]) == (chart2.one, chart2.zero)
    assert (d.alpha.data[0], d.alpha.data[1]) == (chart2.one, chart2.zero)
