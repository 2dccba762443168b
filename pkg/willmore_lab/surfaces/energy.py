"""
Willmore energy W = int |H|^2 dvol

Disk charts give patch energies int |H|^2 e^(2 lambda) dx, closed surfaces are integrated on their periodic
parametrization, and the round sphere takes two antipodal stereographic hemispheres.
The conformal energy int (|H|^2 - K) dvol = 1/2 int |B - H g|^2 dvol is pointwise invariant under mobius maps,
so it is the quantity compared on patches.
"""
import logging
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from willmore_lab import settings
from willmore_lab.disk_field import PeriodicGrid, PolarField, PolarGrid, integrate
from willmore_lab.geometry import Geometry, Immersion, analyze
from willmore_lab.solvers.reports import _clean
from willmore_lab.surfaces.catalog import CatalogSurface, get_surface, sample
from willmore_lab.surfaces.parametric import PeriodicImmersion

logger = logging.getLogger('willmore_lab')

LI_YAU_FLAGS = ('below_8pi', 'at_or_above')


def li_yau_flag(W: float) -> str:
    """
    'below_8pi' when W < 8 pi, closed surfaces below the threshold are embedded
    """
    return LI_YAU_FLAGS[0] if W < settings.LI_YAU_THRESHOLD else LI_YAU_FLAGS[1]


def _geometry(target: Union[Immersion, Geometry]) -> Geometry:
    return target if isinstance(target, Geometry) else analyze(target, gauge=False)


def _volume_form(geom: Geometry) -> PolarField:
    return PolarField(geom.grid, np.exp(2 * geom.lam.values))


def patch_energy(target: Union[Immersion, Geometry]) -> float:
    """
    int_D |H|^2 e^(2 lambda) dx over a conformal disk chart
    """
    geom = _geometry(target)
    squared = geom.H.magnitude() * geom.H.magnitude()
    return integrate(squared * _volume_form(geom))


def conformal_patch_energy(target: Union[Immersion, Geometry]) -> float:
    """
    int_D (|B|^2 / 2 - |H|^2) e^(2 lambda) dx
    """
    geom = _geometry(target)
    squared = geom.H.magnitude() * geom.H.magnitude()
    density = geom.second.normB2 * 0.5 - squared
    return integrate(density * _volume_form(geom))


def parametric_energy(surface: PeriodicImmersion) -> float:
    curvature = surface.curvature()
    return surface.grid.integrate(np.sum(curvature.H ** 2, axis=-1) * curvature.area_element)


def parametric_conformal_energy(surface: PeriodicImmersion) -> float:
    curvature = surface.curvature()
    density = 0.5 * curvature.normB2 - np.sum(curvature.H ** 2, axis=-1)
    return surface.grid.integrate(density * curvature.area_element)


def sphere_energy(entry: CatalogSurface, grid: PolarGrid) -> float:
    """
    lower hemisphere chart plus its mirror image through the equator plane
    """
    lower = sample(entry, grid)
    mirrored = lower.phi.values * np.array([1.0, 1.0, -1.0])
    upper = lower.copy(phi=lower.phi.with_values(mirrored, boundary=lower.phi.boundary * np.array([1.0, 1.0, -1.0])),
                       source=f'{lower.source}|upper')
    return patch_energy(lower) + patch_energy(upper)


def willmore_energy(surface, grid: Union[PolarGrid, PeriodicGrid] = None, closed: bool = True) -> float:
    """
    :param surface: Immersion or Geometry (patch energy), PeriodicImmersion, or a catalog id / entry sampled on grid
    :param grid: required for catalog ids, a PeriodicGrid selects the closed parametrization
    :param closed: for the sphere, integrate both hemispheres instead of the chart
    :return: the energy
    """
    if isinstance(surface, PeriodicImmersion):
        return parametric_energy(surface)
    if isinstance(surface, (Immersion, Geometry)):
        return patch_energy(surface)
    if grid is None:
        raise ValueError(f'Invalid call: a grid is needed to sample {surface}')
    entry = get_surface(surface)
    if entry.synthetic:
        raise ValueError(f'Invalid surface for the energy: {entry.label} is a synthetic field pair')
    if isinstance(grid, PeriodicGrid):
        return parametric_energy(sample(entry, grid))
    if closed and entry.id == 'sphere_stereo':
        return sphere_energy(entry, grid)
    return patch_energy(sample(entry, grid))


@dataclass
class EnergyReport:
    surface: str
    value: float
    kind: str
    closed_form: Optional[float] = None
    relative_error: Optional[float] = None
    li_yau: str = LI_YAU_FLAGS[0]
    grid: str = ''

    def to_dict(self) -> dict:
        return {'surface': self.surface, 'value': _clean(self.value), 'kind': self.kind,
                'closed_form': _clean(self.closed_form), 'relative_error': _clean(self.relative_error),
                'li_yau': self.li_yau, 'grid': self.grid}


def energy_report(surface, grid: Union[PolarGrid, PeriodicGrid]) -> EnergyReport:
    """
    energy of a catalog surface with its closed form and the li yau flag
    closed surfaces are measured on a periodic grid (two charts for the sphere), everything else as a patch
    """
    entry = get_surface(surface)
    if entry.periodic is not None and not isinstance(grid, PeriodicGrid):
        grid = PeriodicGrid(2 * grid.n_r, 2 * grid.n_r)
    if isinstance(grid, PeriodicGrid):
        value, kind, closed_form = willmore_energy(entry, grid), 'closed', entry.energy
    elif entry.id == 'sphere_stereo':
        value, kind, closed_form = sphere_energy(entry, grid), 'closed', entry.energy
    else:
        value, kind, closed_form = willmore_energy(entry, grid, closed=False), 'patch', entry.patch_energy

    relative = None
    if closed_form is not None:
        relative = abs(value - closed_form) / closed_form if closed_form else abs(value)
    logger.info('energy of %s: %.12g (closed form %s)', entry.label, value, closed_form)
    return EnergyReport(entry.label, value, kind, closed_form, relative, li_yau_flag(value), repr(grid))
