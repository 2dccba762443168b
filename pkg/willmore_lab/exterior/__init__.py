from .fields import (
    apply_projector,
    embed_vectors,
    normal_projectors,
    star_arrays,
    vector_wedge_star,
    wedge_arrays,
    wedge_star,
)
from .multivector import (
    MultiVector,
    UnitSimpleKVector,
    canonical_reordering_sign,
    contract,
    project_normal,
    project_tangent,
    star_identify,
    star_identify_inverse,
    wedge,
)

__all__ = [
    'MultiVector',
    'UnitSimpleKVector',
    'canonical_reordering_sign',
    'wedge',
    'contract',
    'star_identify',
    'star_identify_inverse',
    'project_normal',
    'project_tangent',
    'embed_vectors',
    'wedge_arrays',
    'star_arrays',
    'wedge_star',
    'vector_wedge_star',
    'normal_projectors',
    'apply_projector',
]
