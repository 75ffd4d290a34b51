import pytest

from src.errors import DimensionError, NotSpecialError, PreconditionError
from src.projective import special_part
from src.pwext import (
    Rejection, WalkerNormalForm, conformal_covariance_check, curvature_dictionary, einstein_check,
    frame_christoffels, frame_christoffels_intrinsic, frame_christoffels_koszul, frame_commutators,
    k_geodesic_shearfree, k_properties, k_twisting, mu_coordinates, normal_form_from_metric,
    recover_connection, thomas_pw, vertical_totally_geodetic, walker_conditions, weyl_cotton_only,
)
from src.symcore import TensorField, down


@pytest.fixture(params=["pw_flat2", "pw_e2", "pw_e3", "pw_cotton2"])
def pw(request):
    return request.getfixturevalue(request.param)


def test_christoffel_oracle(pw):
    closed = frame_christoffels(pw)
    assert (closed - frame_christoffels_koszul(pw)).is_zero()
    assert (closed - frame_christoffels_intrinsic(pw)).is_zero()


def test_curvature_dictionary(pw):
    assert curvature_dictionary(pw).mismatches() == {}


def test_k_and_frame_properties(pw):
    assert k_properties(pw).ok()
    assert mu_coordinates(pw).is_zero()
    assert frame_commutators(pw).is_zero()
    assert vertical_totally_geodetic(pw).is_zero()
    assert k_geodesic_shearfree(pw).is_zero()
    assert k_twisting(pw)


def test_walker_conditions(pw):
    assert all(r.is_zero() for r in walker_conditions(pw).values())


def test_metric_signature_blocks(pw_e2, chart2):
    g = pw_e2.metric
    assert g[0, 0] == -2 * chart2.x(1) * chart2.p(1)
    assert g[0, 2] == chart2.one
    assert g[2, 3] == chart2.zero


def test_ricci_flat_base_gives_ricci_flat_metric(pw_e3):
    report = einstein_check(pw_e3)
    assert report.is_ricci_flat
    assert report.ok()
    assert curvature_dictionary(pw_e3).schouten.is_zero()


def test_non_ricci_flat_base_is_not_einstein(pw_e2):
    report = einstein_check(pw_e2)
    assert not report.is_einstein
    assert report.ok()


def test_weyl_is_cotton_only_in_two_dimensions(pw_cotton2, pw_e3):
    assert weyl_cotton_only(pw_cotton2).is_zero()
    assert not curvature_dictionary(pw_cotton2).weyl.is_zero()
    with pytest.raises(DimensionError):
        weyl_cotton_only(pw_e3)


def test_normal_form_recovers_connection(pw_e2, e2):
    N = normal_form_from_metric(pw_e2.metric)
    assert isinstance(N, WalkerNormalForm)
    D = recover_connection(N)
    assert not isinstance(D, Rejection)
    for a in range(2):
        for c in range(2):
            for b in range(2):
                assert D.G(a, c, b) == e2.G(a, c, b)
    assert (WalkerNormalForm.from_geometry(pw_e2).metric() - pw_e2.metric).is_zero()


@pytest.mark.parametrize("theta, condition", [
    ("x2*p2 + p1^2", "linear"),
    ("x2*p2 + 1", "homogeneous"),
    ("x2*p2 + p1", "trace"),
])
def test_normal_form_rejections(theta, condition):
    result = recover_connection(WalkerNormalForm.from_entries(2, {(0, 0): theta}))
    assert isinstance(result, Rejection)
    assert result.condition == condition


def test_asymmetric_theta_is_rejected(chart2):
    theta = TensorField.from_nested(chart2, (down(2), down(2)), [["0", "p1"], ["0", "0"]])
    result = recover_connection(WalkerNormalForm(2, theta))
    assert result.condition == "symmetric"


def test_metric_outside_normal_form(pw_e2):
    g = pw_e2.metric
    broken = TensorField.from_function(g.chart, g.slots, lambda a, b: 2 * g[a, b])
    assert normal_form_from_metric(broken).condition == "walker-normal-form"


@pytest.mark.parametrize("s", ["1 + x1", "1 + x2^2"])
@pytest.mark.parametrize("w", [0, 1, 2, 3])
def test_conformal_covariance(e2, s, w):
    report = conformal_covariance_check(e2, s, w)
    assert report.ok()
    assert report.difference.is_zero()
    assert report.is_conformal == (w == 2)


def test_conformal_covariance_preconditions(e2, nonspecial2):
    with pytest.raises(NotSpecialError):
        conformal_covariance_check(nonspecial2, "1 + x1", 2)
    with pytest.raises(PreconditionError):
        conformal_covariance_check(e2, "x1", 2)


def test_thomas_metric_depends_only_on_class(nonspecial2, e2, pw_e2):
    _, special = special_part(nonspecial2)
    assert (thomas_pw(nonspecial2).metric - thomas_pw(special).metric).is_zero()
    assert (thomas_pw(e2).metric - pw_e2.metric).is_zero()


@pytest.mark.parametrize("w", [1, 2])
def test_conformal_covariance_on_e3(e3, w):
    report = conformal_covariance_check(e3, "1 + x3^2 - x1", w)
    assert report.ok()
    assert report.is_conformal == (w == 2)


def test_traced_connection_is_rejected_by_normal_form(nonspecial2, e2, pw_e2):
    result = recover_connection(WalkerNormalForm.from_connection(nonspecial2))
    assert isinstance(result, Rejection)
    assert result.condition == "trace"
    assert (WalkerNormalForm.from_connection(e2).metric() - pw_e2.metric).is_zero()


def test_thomas_metric_of_traced_connection_round_trips(nonspecial2):
    P = thomas_pw(nonspecial2)
    D = recover_connection(normal_form_from_metric(P.metric))
    assert not isinstance(D, Rejection)
    assert (D.gamma - P.source.gamma).is_zero()
