"""PW 几何上的旋量：Clifford 模、旋量联络与纯旋量 χ、η"""

from .clifford import Chirality, CliffordModule, Spinor, clifford_module, degree
from .spinor import (
    chi_projector, clifford_compatibility, conformal_killing_residual, dirac, eta_equation_residual,
    eta_spinor, etacheck_projector, frame_derivative, k_from_eta, lie_derivative_spinor,
    make_chi_etacheck, projector_identities, spin_covariant_derivative, twistor_residual,
)

__all__ = [
    'Chirality',
    'CliffordModule',
    'Spinor',
    'clifford_module',
    'degree',
    'chi_projector',
    'clifford_compatibility',
    'conformal_killing_residual',
    'dirac',
    'eta_equation_residual',
    'eta_spinor',
    'etacheck_projector',
    'frame_derivative',
    'k_from_eta',
    'lie_derivative_spinor',
    'make_chi_etacheck',
    'projector_identities',
    'spin_covariant_derivative',
    'twistor_residual',
]
