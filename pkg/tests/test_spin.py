import pytest

from src.errors import PreconditionError, SlotMismatchError
from src.spin import (
    Chirality, Spinor, clifford_compatibility, clifford_module, eta_equation_residual, eta_spinor, k_from_eta,
    lie_derivative_spinor, make_chi_etacheck, projector_identities, twistor_residual,
)


@pytest.fixture(params=["pw_flat2", "pw_e2", "pw_cotton2", "pw_e3"])
def pw(request):
    return request.getfixturevalue(request.param)


@pytest.mark.parametrize("n", [2, 3])
def test_clifford_relations(n):
    from src.symcore import get_chart
    C = clifford_module(get_chart(n))
    assert C.clifford_violations() == []
    assert C.degree_shift_ok()


def test_spin_connection_is_clifford_compatible(pw_e2):
    assert clifford_compatibility(pw_e2) == []


def test_chi_is_twistor_spinor(pw):
    chi, _ = make_chi_etacheck(clifford_module(pw.chart))
    assert all(r.is_zero() for r in twistor_residual(pw, chi))


def test_lie_derivative_of_chi_along_k(pw):
    chi, _ = make_chi_etacheck(clifford_module(pw.chart))
    lie = lie_derivative_spinor(pw, pw.k_vector, chi)
    assert (lie + chi.scale(pw.chart.const(pw.n + 1, 2))).is_zero()


def test_lie_derivative_needs_conformal_killing_field(pw_flat2, chart2):
    chi, etacheck = make_chi_etacheck(clifford_module(chart2))
    with pytest.raises(SlotMismatchError):
        lie_derivative_spinor(pw_flat2, pw_flat2.k_vector, etacheck)
    not_killing = pw_flat2.vector_from_frame([chart2.x(0), chart2.zero, chart2.zero, chart2.zero])
    with pytest.raises(PreconditionError):
        lie_derivative_spinor(pw_flat2, not_killing, chi)


def test_chi_and_eta_are_pure(pw_e2, chart2):
    C = clifford_module(chart2)
    chi, etacheck = make_chi_etacheck(C)
    assert C.purity_rank(chi) == 2
    assert C.purity_rank(eta_spinor(pw_e2)) == 2
    assert chi.chirality == Chirality.PLUS
    assert eta_spinor(pw_e2).chirality == Chirality.MINUS
    assert etacheck.pair(chi) == chart2.const(-1, 2)


def test_pair_rejects_two_spinors(chart2):
    chi, _ = make_chi_etacheck(clifford_module(chart2))
    with pytest.raises(SlotMismatchError):
        chi.pair(chi)


def test_projector_identities(pw):
    assert all(r.is_zero() for r in projector_identities(pw).values())
    assert (k_from_eta(pw) - pw.k_vector).is_zero()


def test_eta_equation(pw):
    assert all(r.is_zero() for r in eta_equation_residual(pw))


def test_spinor_arithmetic(chart2):
    a = Spinor.from_dict(chart2, {0: "x1", 3: 2})
    b = Spinor.from_dict(chart2, {0: "x1"})
    assert (a - b).nonzero() == [(3, chart2.const(2))]
    assert (a - a).is_zero()
    assert a.chirality == Chirality.PLUS
