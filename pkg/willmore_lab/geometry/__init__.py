from .analysis import GaussPair, Geometry, analyze
from .curvature import (
    SecondFundamental,
    ShapeOperators,
    gauss_curvature,
    liouville_curvature,
    liouville_defect,
    second_fundamental,
    shape_operators,
)
from .frames import FrameBundle, build_frames, coulomb_gauge
from .identities import (
    check_laplacian_identity,
    check_normal_derivative_identity,
    normal_laplacian,
    normal_laplacian_direct,
    projector_routes_defect,
    shape_operator_defect,
    total_curvature,
)
from .immersion import Immersion, conformal_factor, require_conformal

__all__ = [
    'Immersion',
    'FrameBundle',
    'SecondFundamental',
    'ShapeOperators',
    'Geometry',
    'GaussPair',
    'conformal_factor',
    'require_conformal',
    'build_frames',
    'coulomb_gauge',
    'second_fundamental',
    'shape_operators',
    'gauss_curvature',
    'liouville_curvature',
    'liouville_defect',
    'check_normal_derivative_identity',
    'check_laplacian_identity',
    'normal_laplacian',
    'normal_laplacian_direct',
    'projector_routes_defect',
    'shape_operator_defect',
    'total_curvature',
    'analyze',
]
