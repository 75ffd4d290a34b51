"""M̃ 上的（共形）Killing 场：提升、分解与判据"""

from .killing import (
    CKProlongation, ck_prolongation, ck_prolongation_identities, ck_residual, killing_residual,
    lie_cubic_residual, lie_eigen_residual, lie_k, mu_scalar,
)
from .lifts import (
    EIGENVALUES, ConformalKillingCandidate, InvarianceReport, LiftMode, LiftPart, LightlikeReport,
    affine_homothety_remark, killing_lift_norms, lift, lift_affine, lift_conformal, lift_invariance_check,
    lift_residual, lightlike_geodetic, n3_bivector_to_oneform, tangency,
)
from .decompose import SymmetryDecomposition, decompose

__all__ = [
    'CKProlongation',
    'ck_prolongation',
    'ck_prolongation_identities',
    'ck_residual',
    'killing_residual',
    'lie_cubic_residual',
    'lie_eigen_residual',
    'lie_k',
    'mu_scalar',
    'EIGENVALUES',
    'ConformalKillingCandidate',
    'InvarianceReport',
    'LiftMode',
    'LiftPart',
    'LightlikeReport',
    'affine_homothety_remark',
    'killing_lift_norms',
    'lift',
    'lift_affine',
    'lift_conformal',
    'lift_invariance_check',
    'lift_residual',
    'lightlike_geodetic',
    'n3_bivector_to_oneform',
    'tangency',
    'SymmetryDecomposition',
    'decompose',
]
