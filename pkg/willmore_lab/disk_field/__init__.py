from .field import PolarField
from .grid import PeriodicGrid, PolarGrid
from .io import read_binary, read_csv, write_binary, write_csv
from .norms import LorentzNormReport, h_minus1_norm, lorentz_norm, lp_norm, norm_l2, sup
from .operators import (
    angular_split,
    boundary_integral,
    boundary_trace,
    curl,
    div,
    grad,
    integrate,
    laplacian,
    perp_grad,
)

__all__ = [
    'PolarGrid',
    'PeriodicGrid',
    'PolarField',
    'LorentzNormReport',
    'grad',
    'perp_grad',
    'div',
    'curl',
    'laplacian',
    'integrate',
    'angular_split',
    'boundary_trace',
    'boundary_integral',
    'lorentz_norm',
    'norm_l2',
    'lp_norm',
    'sup',
    'h_minus1_norm',
    'read_csv',
    'write_csv',
    'read_binary',
    'write_binary',
]
