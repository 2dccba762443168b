"""
Norms of disk fields

Lorentz norms follow the distribution-function form, with mu(l) = |{x : |f|(x) >= l}| measured by the cell areas:

    (2,inf) = sup_l  l * mu(l)^(1/2)
    (2,1)   = int_0^inf mu(l)^(1/2) dl
    (2,2)   = (int |f|^2)^(1/2)

On the grid mu is a step function of the level, so the (2,1) integral is evaluated exactly as
sum_k (f_k - f_(k+1)) * sqrt(mu_k) over the decreasing rearrangement f_1 >= f_2 >= ... (f_(N+1) = 0).
With this normalization a constant c has all three norms equal to |c| * sqrt(pi).
Vector valued fields are measured through their pointwise euclidean magnitude.
"""
from dataclasses import dataclass, field
from typing import List, Tuple

import numpy as np

from willmore_lab.disk_field.field import PolarField
from willmore_lab.disk_field.grid import Region
from willmore_lab.disk_field.operators import grad, integrate
from willmore_lab.disk_field.utils import pairwise_sum

LORENTZ_LABELS = ('2,1', '2,inf', '2,2')
REARRANGEMENT_SAMPLES = 32


@dataclass
class LorentzNormReport:
    p_q: str
    value: float
    decreasing_rearrangement_sample: List[Tuple[float, float]] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {'p_q': self.p_q, 'value': self.value,
                'decreasing_rearrangement_sample': [list(pair) for pair in self.decreasing_rearrangement_sample]}


def _normalize_label(which) -> str:
    label = str(which).replace('(', '').replace(')', '').replace(' ', '').replace('∞', 'inf')
    if label not in LORENTZ_LABELS:
        raise ValueError(f'Invalid lorentz norm: {which}, expected one of {LORENTZ_LABELS}')
    return label


def decreasing_rearrangement(f: PolarField, region: Region = None) -> Tuple[np.array, np.array]:
    """
    levels sorted in decreasing order and the measure of the super level sets
    :param f: the field
    :param region: optional sub-region
    :return: (levels, measures), measures[k] = |{|f| >= levels[k]}|
    """
    grid = f.grid
    mask = grid.region_mask(region).ravel()
    levels = f.magnitude().values[..., 0].ravel()[mask]
    areas = grid.cell_areas.ravel()[mask]
    order = np.argsort(-levels, kind='stable')
    return levels[order], np.cumsum(areas[order])


def lorentz_norm(f: PolarField, which='2,inf', region: Region = None) -> LorentzNormReport:
    """
    lorentz norm of a field, normalization documented in the module docstring
    :param f: the field
    :param which: '2,1', '2,inf' or '2,2' (tuples like (2, 1) are accepted too)
    :param region: optional sub-region
    :return: LorentzNormReport
    """
    label = _normalize_label(which)
    levels, measures = decreasing_rearrangement(f, region)
    if levels.shape[0] == 0 or levels[0] == 0:
        return LorentzNormReport(label, 0.0, [])

    if label == '2,inf':
        value = float(np.max(levels * np.sqrt(measures)))
    elif label == '2,1':
        steps = levels - np.append(levels[1:], 0.0)
        value = float(pairwise_sum(np.ascontiguousarray(steps * np.sqrt(measures))))
    else:
        value = float(np.sqrt(integrate(f.magnitude() * f.magnitude(), region)))

    picks = np.unique(np.linspace(0, levels.shape[0] - 1, REARRANGEMENT_SAMPLES).astype(int))
    sample = [(float(levels[i]), float(measures[i])) for i in picks]
    return LorentzNormReport(label, value, sample)


def norm_l2(f: PolarField, region: Region = None) -> float:
    magnitude = f.magnitude()
    return float(np.sqrt(integrate(magnitude * magnitude, region)))


def lp_norm(f: PolarField, p: float, region: Region = None) -> float:
    magnitude = f.magnitude()
    powered = magnitude.with_values(magnitude.values ** p)
    return float(integrate(powered, region) ** (1.0 / p))


def sup(f: PolarField, region: Region = None) -> float:
    mask = f.grid.region_mask(region)
    magnitude = f.magnitude().values[..., 0]
    if not mask.any():
        return 0.0
    return float(np.max(magnitude[mask]))


def gradient_energy(f: PolarField, region: Region = None) -> float:
    """
    int |grad f|^2
    """
    return norm_l2(grad(f), region) ** 2


def h_minus1_norm(g: PolarField) -> float:
    """
    H^-1 norm as the L2 norm of the gradient of the dirichlet poisson solution of g
    :param g: any field
    :return: the norm
    :raise SolverError: if the poisson solve fails
    """
    from willmore_lab.solvers.poisson import poisson

    return norm_l2(grad(poisson(g, 'dirichlet')))
