"""
Residuals of the willmore equation in its two forms

    classical    lap_n H - 2 |H|^2 H + A~(H)                  (normal laplacian in the induced metric)
    divergence   L_n H = lap H - 3 div(pi_n grad H) - div(*(H ^ perp_grad n))
    scalar_m3    lap_g H + 2 H (H^2 - K), H = H . n           (hypersurfaces only)

For m = 3 the two vector forms are tied pointwise by L_n H = -2 e^(2 lambda) classical.
"""
import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np
from tqdm import tqdm

from willmore_lab import settings
from willmore_lab.disk_field import PolarField, PolarGrid, laplacian, norm_l2, sup
from willmore_lab.disk_field.operators import inner
from willmore_lab.disk_field.utils import observed_orders
from willmore_lab.geometry import Geometry, normal_laplacian
from willmore_lab.solvers import GaussOperators
from willmore_lab.solvers.reports import _clean

logger = logging.getLogger('willmore_lab')

FORMS = ('classical', 'divergence', 'scalar_m3')
INTERIOR = 0.5
CROSS_FORM_FACTOR_M3 = -2.0


@dataclass
class ResidualReport:
    """
    A residual field of one form of the equation with its interior norms on D_(1/2)
    """
    form: str
    residual_field: PolarField
    norms: Dict[str, float] = field(default_factory=dict)
    refinement_orders: List[float] = field(default_factory=list)
    extras: Dict[str, object] = field(default_factory=dict)
    companion: Optional['ResidualReport'] = None

    def to_dict(self) -> dict:
        out = {
            'form': self.form,
            'norms': _clean(self.norms),
            'refinement_orders': _clean(self.refinement_orders),
            'extras': _clean(self.extras),
        }
        if self.companion is not None:
            out['companion'] = self.companion.to_dict()
        return out


def _interior_norms(residual: PolarField) -> Dict[str, float]:
    return {'l2': norm_l2(residual, INTERIOR), 'sup': sup(residual, INTERIOR)}


def _report(form: str, residual: PolarField, **extras) -> ResidualReport:
    return ResidualReport(form, residual, _interior_norms(residual), extras=extras)


#
# Forms
#
def scalar_residual(geom: Geometry) -> ResidualReport:
    """
    e^(-2 lambda) lap H + 2 H (H^2 - K) for the scalar mean curvature of a hypersurface
    """
    if geom.m != 3:
        raise ValueError(f'Invalid dimension for the scalar residual: m={geom.m}, expected 3')
    H = geom.second.H_comp
    K = geom.shape.K
    values = np.exp(-2 * geom.lam.values) * laplacian(H).values + 2 * H.values * (H.values ** 2 - K.values)
    return _report('scalar_m3', PolarField(geom.grid, values, name='scalar_residual'))


def classical_residual(geom: Geometry) -> ResidualReport:
    """
    residual of lap_n H - 2 |H|^2 H + A~(H) = 0
    :param geom: geometry with coulomb gauged frames
    :return: ResidualReport, for m = 3 the scalar residual rides along as companion
    :raise GaugeError: if the frames are not gauged
    """
    H = geom.H
    lap_n = normal_laplacian(geom.frames, geom.second)
    squared = np.sum(H.values ** 2, axis=-1, keepdims=True)
    values = lap_n.values - 2 * squared * H.values + geom.shape.A_tilde_of_H.values
    report = _report('classical', PolarField(geom.grid, values, name='classical_residual'))
    if geom.m == 3:
        report.companion = scalar_residual(geom)
    return report


def divergence_form_residual(geom: Geometry, ops: GaussOperators = None) -> ResidualReport:
    """
    L_n H in strong form
    """
    ops = GaussOperators(geom.n) if ops is None else ops
    residual = ops.ln_apply(geom.H)
    return _report('divergence', residual.with_values(residual.values, name='divergence_residual'))


def cross_form_check(geom: Geometry, classical: ResidualReport = None,
                     divergence: ResidualReport = None) -> Dict[str, Optional[float]]:
    """
    measured factor between L_n H and e^(2 lambda) classical on D_(1/2), least squares over the nodes
    the expected factor -2 is only known for m = 3
    :return: dict with ratio, expected and the relative defect against the expected factor
    """
    classical = classical_residual(geom) if classical is None else classical
    divergence = divergence_form_residual(geom) if divergence is None else divergence
    scaled = classical.residual_field * PolarField(geom.grid, np.exp(2 * geom.lam.values))
    target = divergence.residual_field

    denominator = inner(scaled, scaled, INTERIOR)
    ratio = inner(target, scaled, INTERIOR) / denominator if denominator > 0 else None
    expected = CROSS_FORM_FACTOR_M3 if geom.m == 3 else None
    defect = None
    if expected is not None:
        scale = norm_l2(target, INTERIOR)
        misfit = norm_l2(target - scaled * expected, INTERIOR)
        defect = misfit / scale if scale > 0 else misfit
    return {'ratio': ratio, 'expected': expected, 'defect': defect}


RESIDUALS = {
    'classical': classical_residual,
    'divergence': divergence_form_residual,
    'scalar_m3': scalar_residual,
}


#
# Refinement
#
def ladder_grid(n_r: int) -> PolarGrid:
    """
    rung of a convergence ladder, run at the ladder finite difference order
    """
    return PolarGrid(n_r, max(settings.MIN_N_THETA, 2 * n_r), fd_order=settings.LADDER_FD_ORDER)


def residual_ladder(build: Callable[[PolarGrid], Geometry], form: str = 'classical',
                    ladder: Sequence[int] = settings.DEFAULT_LADDER, progress: bool = False) -> ResidualReport:
    """
    residual of one form along a refinement ladder
    :param build: geometry of the same surface on a given grid
    :param form: 'classical', 'divergence' or 'scalar_m3'
    :param ladder: radial node counts, increasing
    :param progress: show a progress bar
    :return: report of the finest rung, sup norms per rung in extras['ladder'] and observed orders of the sup norms
    """
    if form not in RESIDUALS:
        raise ValueError(f'Invalid residual form: {form}, expected one of {FORMS}')
    ladder = list(ladder)
    reports = []
    for n_r in tqdm(ladder, desc=f'{form} ladder', disable=not progress):
        reports.append(RESIDUALS[form](build(ladder_grid(n_r))))
        logger.debug('%s residual at n_r=%d: sup %.3e', form, n_r, reports[-1].norms['sup'])

    final = reports[-1]
    final.refinement_orders = observed_orders([r.norms['sup'] for r in reports], ladder)
    final.extras['ladder'] = {str(n_r): r.norms for n_r, r in zip(ladder, reports)}
    if final.companion is not None:
        companions = [r.companion for r in reports]
        final.companion.refinement_orders = observed_orders([c.norms['sup'] for c in companions], ladder)
        final.companion.extras['ladder'] = {str(n_r): c.norms for n_r, c in zip(ladder, companions)}
    return final
