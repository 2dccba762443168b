from .bootstrap import BootstrapReport, bootstrap_report, localization_terms, smoothstep_cutoff
from .hodge_system import HodgeSystemReport, hodge_system_fields, jacobian_rhs_A, jacobian_rhs_B
from .operator import (
    constant_vector_image,
    pairing_density,
    self_adjointness_check,
    self_adjointness_defect,
    willmore_operator_apply,
    willmore_pairing,
)
from .residuals import (
    ResidualReport,
    classical_residual,
    cross_form_check,
    divergence_form_residual,
    ladder_grid,
    residual_ladder,
    scalar_residual,
)
from .residue import (
    DecayProfile,
    ResidueReport,
    decay_profiles,
    radial_cutoff_gradient,
    resolved_radius,
    residue,
    residue_radii,
)

__all__ = [
    'ResidualReport',
    'ResidueReport',
    'DecayProfile',
    'HodgeSystemReport',
    'BootstrapReport',
    'pairing_density',
    'willmore_pairing',
    'willmore_operator_apply',
    'constant_vector_image',
    'self_adjointness_defect',
    'self_adjointness_check',
    'classical_residual',
    'divergence_form_residual',
    'scalar_residual',
    'cross_form_check',
    'ladder_grid',
    'residual_ladder',
    'hodge_system_fields',
    'jacobian_rhs_A',
    'jacobian_rhs_B',
    'residue',
    'residue_radii',
    'resolved_radius',
    'decay_profiles',
    'radial_cutoff_gradient',
    'bootstrap_report',
    'smoothstep_cutoff',
    'localization_terms',
]
