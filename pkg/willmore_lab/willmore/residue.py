"""
Point removability diagnostics for fields smooth away from the origin

The residue is the distributional charge of L_n H at 0, measured through the weak pairing against smooth
radial cutoffs chi_r equal to 1 on D_(r/2) and 0 outside D_r:

    c(r) = <L_n H, chi_r> = int Y(H) . grad chi_r

so it only samples the annulus r/2 < |x| < r. The values on several radii are fitted by a polynomial in r and
extrapolated to r = 0, H0 = -c0 / 4 pi.
"""
import itertools
import logging
import warnings
from dataclasses import dataclass, field
from typing import Dict, List, Sequence

import numpy as np

from willmore_lab import settings
from willmore_lab.disk_field import PolarField, PolarGrid, grad, sup
from willmore_lab.solvers.reports import _clean
from willmore_lab.willmore.operator import pair_with_gradient, pairing_density

logger = logging.getLogger('willmore_lab')


@dataclass
class ResidueReport:
    radii: List[float]
    flux_per_radius: List[np.array]
    c0: np.array
    H0: np.array
    spread: float
    flagged: bool = False
    extras: Dict[str, object] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            'radii': _clean(self.radii),
            'flux_per_radius': _clean(self.flux_per_radius),
            'c0': _clean(self.c0),
            'H0': _clean(self.H0),
            'spread': _clean(self.spread),
            'flagged': self.flagged,
            'extras': _clean(self.extras),
        }


@dataclass
class DecayProfile:
    """
    sup over the annuli r/2 < |x| < r of
    delta = |x| |grad n| + |x|^2 |hess n|  and  nu = |x|^2 |grad H| + |x| |H|
    """
    radii: List[float]
    delta_r: List[float]
    nu_r: List[float]

    def decay_orders(self, which: str = 'delta') -> List[float]:
        """
        log2 of the ratio between consecutive dyadic entries, 1 for linear decay
        """
        values = self.delta_r if which == 'delta' else self.nu_r
        orders = []
        for (r_a, v_a), (r_b, v_b) in zip(zip(self.radii[:-1], values[:-1]), zip(self.radii[1:], values[1:])):
            if v_a <= 0 or v_b <= 0:
                orders.append(float('nan'))
            else:
                orders.append(float(np.log(v_a / v_b) / np.log(r_a / r_b)))
        return orders

    def to_dict(self) -> dict:
        return {'radii': _clean(self.radii), 'delta_r': _clean(self.delta_r), 'nu_r': _clean(self.nu_r),
                'delta_orders': _clean(self.decay_orders('delta'))}


#
# Cutoffs
#
def _bump(t: np.array) -> np.array:
    """
    exp(-1/t) for t > 0, 0 otherwise
    """
    out = np.zeros_like(t)
    positive = t > 0
    out[positive] = np.exp(-1.0 / t[positive])
    return out


def smooth_step(t: np.array):
    """
    C^inf step rising from 0 at t <= 0 to 1 at t >= 1
    :return: (step, derivative)
    """
    f, g = _bump(t), _bump(1 - t)
    total = f + g
    step = f / total
    df = np.zeros_like(t)
    dg = np.zeros_like(t)
    df[t > 0] = f[t > 0] / t[t > 0] ** 2
    dg[t < 1] = g[t < 1] / (1 - t[t < 1]) ** 2
    derivative = (df * g + f * dg) / total ** 2
    return step, derivative


def radial_cutoff_gradient(grid: PolarGrid, radius: float) -> PolarField:
    """
    analytic gradient of chi_r(x) = 1 - step((|x| - r/2) / (r/2)), cshape (2, 1)
    """
    half = radius / 2
    _, derivative = smooth_step((grid.r - half) / half)
    radial = -derivative / half
    values = np.stack([radial * np.cos(grid.theta), radial * np.sin(grid.theta)], axis=2)
    return PolarField(grid, values[..., None], name='grad_chi')


#
# Residue
#
def resolved_radius(grid: PolarGrid, nodes: int = settings.RESIDUE_MIN_ANNULUS_NODES) -> float:
    """
    smallest outer radius r whose annulus (r/2, r) holds `nodes` radial nodes, with r/2 beyond the nodes whose
    radial stencils reach across the origin
    :return: the radius, inf when no annulus of the grid qualifies
    """
    r_nodes = grid.r_nodes
    clear = r_nodes[min(grid.fd_order // 2 + 1, grid.n_r - 1)]
    for radius in r_nodes:
        inside = np.count_nonzero((r_nodes > radius / 2) & (r_nodes < radius))
        if inside >= nodes and radius / 2 >= clear:
            return float(radius)
    return float('inf')


def residue_radii(grid: PolarGrid, radii: Sequence[float] = None) -> List[float]:
    """
    the given radii, or RESIDUE_RADII pulled up into the range the grid resolves
    the default radii are replaced by as many geometric steps from the largest one down to the resolved radius,
    provided they still span RESIDUE_MIN_SPAN
    """
    if radii is not None:
        return [float(r) for r in radii]
    defaults = [float(r) for r in settings.RESIDUE_RADII]
    floor = resolved_radius(grid)
    if min(defaults) >= floor or max(defaults) / floor < settings.RESIDUE_MIN_SPAN:
        return defaults
    logger.info('residue radii raised to [%.3f, %.3f] for %s', floor, max(defaults), grid)
    return [float(r) for r in np.geomspace(max(defaults), floor, len(defaults))]


def residue(geom, radii: Sequence[float] = None, degree: int = 1) -> ResidueReport:
    """
    distributional charge of L_n H at the origin
    :param geom: anything carrying n (gauss blade field) and H, smooth away from 0
    :param radii: at least 4 radii, adapted to the grid from RESIDUE_RADII when omitted
    :param degree: degree of the polynomial fit in r
    :return: ResidueReport, flagged when the spread exceeds a fraction of |c0| or an annulus is not resolved
    """
    grid = geom.grid
    radii = residue_radii(grid, radii)
    if len(radii) < 4:
        raise ValueError(f'Invalid radii: {radii}, at least 4 are needed')
    if degree >= len(radii):
        raise ValueError(f'Invalid degree: {degree} for {len(radii)} radii')
    floor = resolved_radius(grid)
    unresolved = [r for r in radii if r < floor]
    if unresolved:
        warnings.warn(f'Residue radii {unresolved} fall below the resolved radius {floor:.3f} of {grid}, '
                      f'refine the grid or raise the radii')

    Y = pairing_density(geom.n, geom.H)
    fluxes = [np.atleast_1d(pair_with_gradient(Y, radial_cutoff_gradient(grid, r))) for r in radii]

    coefficients = np.polyfit(np.array(radii), np.stack(fluxes), degree)
    c0 = coefficients[-1]
    spread = max(float(np.linalg.norm(a - b)) for a, b in itertools.combinations(fluxes, 2))
    threshold = settings.RESIDUE_SPREAD_FLAG * max(float(np.linalg.norm(c0)), settings.RESIDUE_FLOOR)
    if spread > threshold:
        warnings.warn(f'Residue flux spread {spread:.3e} above {threshold:.3e}, the charge depends on the radius')
    logger.debug('residue fluxes %s, c0 %s', fluxes, c0)
    return ResidueReport(radii, fluxes, c0, -c0 / (4 * np.pi), spread, spread > threshold or bool(unresolved),
                         extras={'degree': degree, 'resolved_radius': floor, 'unresolved_radii': unresolved})


def decay_profiles(geom, radii: Sequence[float] = None) -> DecayProfile:
    """
    sup of delta and nu over the dyadic annuli r/2 < |x| < r
    :param geom: anything carrying n and H
    :param radii: outer radii, 1, 1/2, 1/4, ... down to the grid resolution when omitted
    """
    grid = geom.grid
    if radii is None:
        count = max(1, int(np.floor(np.log2(1.0 / grid.r_nodes[0]))))
        radii = [2.0 ** -k for k in range(count)]
    r = PolarField(grid, grid.r)
    grad_n = grad(geom.n)
    delta = r * grad_n.magnitude() + r * r * grad(grad_n).magnitude()
    nu = r * r * grad(geom.H).magnitude() + r * geom.H.magnitude()
    radii = [float(x) for x in radii]
    return DecayProfile(
        radii=radii,
        delta_r=[sup(delta, (x / 2, x)) for x in radii],
        nu_r=[sup(nu, (x / 2, x)) for x in radii],
    )
