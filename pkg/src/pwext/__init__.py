"""T*M 上的 Patterson–Walker 度量"""

from .geometry import PWGeometry, build
from .frame import (
    CurvatureDictionary, cotton_closed, curvature_dictionary, frame_christoffels,
    frame_christoffels_intrinsic, frame_christoffels_koszul, riemann_closed, schouten_closed,
    structure_functions, walker_residual, weyl_closed,
)
from .properties import (
    EinsteinReport, KReport, einstein_check, frame_commutators, k_geodesic_shearfree, k_properties,
    k_twist, k_twisting, mu_coordinates, vertical_totally_geodetic, walker_conditions, weyl_cotton_only,
)
from .normal_form import Rejection, WalkerNormalForm, normal_form_from_metric, recover_connection
from .covariance import CovarianceReport, conformal_covariance_check, thomas_pw

__all__ = [
    'PWGeometry',
    'build',
    'CurvatureDictionary',
    'cotton_closed',
    'curvature_dictionary',
    'frame_christoffels',
    'frame_christoffels_intrinsic',
    'frame_christoffels_koszul',
    'riemann_closed',
    'schouten_closed',
    'structure_functions',
    'walker_residual',
    'weyl_closed',
    'EinsteinReport',
    'KReport',
    'einstein_check',
    'frame_commutators',
    'k_geodesic_shearfree',
    'k_properties',
    'k_twist',
    'k_twisting',
    'mu_coordinates',
    'vertical_totally_geodetic',
    'walker_conditions',
    'weyl_cotton_only',
    'Rejection',
    'WalkerNormalForm',
    'normal_form_from_metric',
    'recover_connection',
    'CovarianceReport',
    'conformal_covariance_check',
    'thomas_pw',
]
