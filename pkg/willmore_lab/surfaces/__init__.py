from .catalog import (
    CATALOG,
    SURFACE_IDS,
    CatalogSurface,
    cap,
    catenoid,
    clifford_torus,
    enneper,
    expected_residue,
    flat,
    get_surface,
    graph,
    log_singular,
    parse_surface_id,
    sample,
    sphere_stereo,
    torus_energy,
    torus_rev,
)
from .energy import (
    EnergyReport,
    conformal_patch_energy,
    energy_report,
    li_yau_flag,
    parametric_conformal_energy,
    parametric_energy,
    patch_energy,
    willmore_energy,
)
from .export import immersion_frame, write_immersion_csv, write_ply
from .mobius import MobiusMap, apply_mobius, clearance, compose, dilation, inversion, random_mobius, rotation, \
    translation
from .parametric import PeriodicImmersion

__all__ = [
    'CatalogSurface',
    'PeriodicImmersion',
    'MobiusMap',
    'EnergyReport',
    'CATALOG',
    'SURFACE_IDS',
    'flat',
    'sphere_stereo',
    'cap',
    'catenoid',
    'enneper',
    'torus_rev',
    'clifford_torus',
    'graph',
    'log_singular',
    'expected_residue',
    'torus_energy',
    'parse_surface_id',
    'get_surface',
    'sample',
    'willmore_energy',
    'patch_energy',
    'conformal_patch_energy',
    'parametric_energy',
    'parametric_conformal_energy',
    'energy_report',
    'li_yau_flag',
    'inversion',
    'translation',
    'dilation',
    'rotation',
    'compose',
    'clearance',
    'random_mobius',
    'apply_mobius',
    'write_ply',
    'write_immersion_csv',
    'immersion_frame',
]
