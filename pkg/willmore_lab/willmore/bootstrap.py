"""
Small energy bootstrap diagnostic

Localizes H with a cutoff chi (1 on D_(1/2), 0 outside D_1):

    L_n(chi H) = chi L_n H + g1 + g2
    g1 = 2 div(grad chi H) - H lap chi - 6 div(pi_n(H) grad chi) + 3 lap chi pi_n(H)
    g2 = 3 sum_j d_j chi (d_j pi_n)(H) - sum_j d_j chi *(H ^ (perp_grad n)_j)

then measures every norm of the chain that leads from the energy of n to a pointwise bound of grad n on D_(1/8).
The quotient of each estimate is reported as an observed constant, None when both sides vanish.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, Optional

import numpy as np

from willmore_lab import settings
from willmore_lab.disk_field import PolarField, PolarGrid, div, grad, h_minus1_norm, integrate, lorentz_norm, \
    lp_norm, norm_l2, sup
from willmore_lab.solvers import GaussOperators, ln_invert, require_small_energy
from willmore_lab.solvers.reports import _clean

logger = logging.getLogger('willmore_lab')

ANNULUS = (0.5, 1.0)


@dataclass
class BootstrapReport:
    energy: float
    epsilon: float
    norms: Dict[str, float] = field(default_factory=dict)
    constants: Dict[str, Optional[float]] = field(default_factory=dict)
    final_ratio: Optional[float] = None
    localization_defect: float = 0.0
    remainder: float = 0.0
    extras: Dict[str, object] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            'energy': _clean(self.energy),
            'epsilon': _clean(self.epsilon),
            'norms': _clean(self.norms),
            'constants': _clean(self.constants),
            'final_ratio': _clean(self.final_ratio),
            'localization_defect': _clean(self.localization_defect),
            'remainder': _clean(self.remainder),
            'extras': _clean(self.extras),
        }


def _ratio(numerator: float, denominator: float) -> Optional[float]:
    return numerator / denominator if denominator > 0 else None


#
# Cutoff
#
def smoothstep_cutoff(grid: PolarGrid):
    """
    chi(r) = 1 - S(2 r - 1) with the quintic smoothstep S(t) = 6 t^5 - 15 t^4 + 10 t^3 on [0, 1]
    :return: (chi, grad chi, lap chi), chi vanishes on the circle
    """
    t = np.clip(2 * grid.r - 1, 0.0, 1.0)
    step = t ** 3 * (10 - 15 * t + 6 * t ** 2)
    d_step = 30 * t ** 2 * (1 - t) ** 2
    dd_step = 60 * t * (1 - t) * (1 - 2 * t)
    d_chi = -2 * d_step
    dd_chi = -4 * dd_step

    chi = PolarField(grid, 1 - step, boundary=0.0, name='chi')
    gradient = np.stack([d_chi * np.cos(grid.theta), d_chi * np.sin(grid.theta)], axis=2)[..., None]
    lap = PolarField(grid, dd_chi + d_chi / grid.r, name='lap_chi')
    return chi, PolarField(grid, gradient, name='grad_chi'), lap


def localization_terms(ops: GaussOperators, H: PolarField, grad_chi: PolarField, lap_chi: PolarField):
    """
    g1 and g2 of the cutoff identity
    """
    grid = ops.grid
    normal_H = PolarField(grid, ops.project(H.values, 0.0, 1.0))
    g1 = 2 * div(grad_chi * PolarField(grid, H.values[:, :, None])) - H * lap_chi \
        - 6 * div(grad_chi * PolarField(grid, normal_H.values[:, :, None])) + 3 * normal_H * lap_chi

    weights = grad_chi.values[..., 0]
    d_projector = grad(PolarField(grid, ops.P)).values
    projector_term = np.einsum('rtj,rtjik,rtk->rti', weights, d_projector, H.values)
    wedge_term = np.einsum('rtj,rtjm->rtm', weights, ops.wedge_term(H).values)
    g2 = PolarField(grid, 3 * projector_term - wedge_term)
    return g1.with_values(g1.values, name='g1'), g2.with_values(g2.values, name='g2')


def bootstrap_report(geom, epsilon: float = settings.SMALL_ENERGY_EPSILON, scheme: str = 'neumann_series',
                     ops: GaussOperators = None) -> BootstrapReport:
    """
    the chain of estimates from small energy to a pointwise bound on grad n
    :param geom: anything carrying n and H
    :param epsilon: bound on int |grad n|^2
    :param scheme: L_n inversion scheme for v1 and v2
    :param ops: operators of geom.n, reused when given
    :return: BootstrapReport
    :raise SmallEnergyError: if int |grad n|^2 exceeds epsilon
    """
    n, H = geom.n, geom.H.without_boundary()
    energy = require_small_energy(n, epsilon)
    ops = GaussOperators(n) if ops is None else ops
    grid = ops.grid

    chi, grad_chi, lap_chi = smoothstep_cutoff(grid)
    chi_H = (chi * H).with_boundary(0.0)
    g1, g2 = localization_terms(ops, H, grad_chi, lap_chi)
    localized = ops.ln_apply(chi_H)
    misfit = norm_l2(localized - chi * ops.ln_apply(H) - g1 - g2)
    localization_defect = misfit / max(norm_l2(localized), np.finfo(float).tiny)

    grad_n = grad(n)
    grad_H = grad(H)
    annulus_H2 = norm_l2(H, ANNULUS) ** 2
    annulus_Hn = integrate(H.magnitude() * grad_n.magnitude(), ANNULUS)

    v1 = ln_invert(n, g1, 'h_minus_1', scheme, epsilon, ops=ops).solution
    v2 = ln_invert(n, g2, 'l1', scheme, epsilon, ops=ops).solution
    grad_chi_H = grad(chi_H)
    remainder = _ratio(norm_l2(grad_chi_H - grad(v1) - grad(v2)), norm_l2(grad_chi_H)) or 0.0

    norms = {
        'annulus_H_l2_sq': annulus_H2,
        'annulus_H_grad_n_l1': annulus_Hn,
        'g1_h_minus_1_sq': h_minus1_norm(g1) ** 2,
        'g2_l1': lp_norm(g2, 1.0),
        'grad_v1_l2': norm_l2(grad(v1)),
        'grad_v2_l2inf': lorentz_norm(grad(v2), '2,inf').value,
        'grad_chi_H_l2inf': lorentz_norm(grad_chi_H, '2,inf').value,
        'grad_n_l2_half': norm_l2(grad_n, 0.5),
        'grad_H_l2inf_half': lorentz_norm(grad_H, '2,inf', 0.5).value,
        'grad_n_l2_quarter': norm_l2(grad_n, 0.25),
        'grad_H_l2_quarter': norm_l2(grad_H, 0.25),
        'grad_H_l2inf_quarter': lorentz_norm(grad_H, '2,inf', 0.25).value,
        'grad_H_l21_eighth': lorentz_norm(grad_H, '2,1', 0.125).value,
        'grad_n_sup_eighth': sup(grad_n, 0.125),
    }
    constants = {
        'g1': _ratio(norms['g1_h_minus_1_sq'], annulus_H2),
        'g2': _ratio(norms['g2_l1'], annulus_Hn),
        'v1': _ratio(norms['grad_v1_l2'], np.sqrt(annulus_H2)),
        'v2': _ratio(norms['grad_v2_l2inf'], annulus_Hn),
        'localized': _ratio(norms['grad_chi_H_l2inf'], np.sqrt(annulus_H2) + annulus_Hn),
        'quarter': _ratio(norms['grad_H_l2_quarter'],
                          (norms['grad_n_l2_half'] + 1) * norms['grad_H_l2inf_half']),
        'eighth': _ratio(norms['grad_H_l21_eighth'],
                         (norms['grad_n_l2_quarter'] + 1) * norms['grad_H_l2_quarter']
                         + norms['grad_H_l2inf_quarter']),
    }
    final_ratio = _ratio(norms['grad_n_sup_eighth'] ** 2, energy)
    logger.info('bootstrap on %s: energy %.3e, final ratio %s', grid, energy, final_ratio)
    return BootstrapReport(energy, epsilon, norms, constants, final_ratio, localization_defect, remainder,
                           extras={'scheme': scheme, 'radii': list(settings.BOOTSTRAP_RADII)})
