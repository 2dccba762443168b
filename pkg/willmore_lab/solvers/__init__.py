from .hodge import HodgeDecomposition, hodge_decompose
from .inversion import GaussOperators, an_apply, an_invert, gauss_energy, ln_apply, ln_invert, require_small_energy
from .poisson import neumann_mismatch, poisson
from .probes import (
    angular_wente_probe,
    eigenprobe,
    expansion_residuals,
    weighted_estimate_probe,
    weighted_probe,
    wente_probe,
)
from .reports import EigenReport, ProbeReport, SolveReport
from .sampling import make_rng, random_gauss_map, random_scalar_field, random_vector_field
from .wente import jacobian, wente_solve

__all__ = [
    'SolveReport',
    'EigenReport',
    'ProbeReport',
    'HodgeDecomposition',
    'GaussOperators',
    'poisson',
    'neumann_mismatch',
    'hodge_decompose',
    'jacobian',
    'wente_solve',
    'an_apply',
    'ln_apply',
    'an_invert',
    'ln_invert',
    'gauss_energy',
    'require_small_energy',
    'wente_probe',
    'angular_wente_probe',
    'weighted_estimate_probe',
    'weighted_probe',
    'eigenprobe',
    'expansion_residuals',
    'make_rng',
    'random_gauss_map',
    'random_scalar_field',
    'random_vector_field',
]
