"""
The willmore operator L_n w = laplacian(w) - 3 div(pi_n grad w) - div(*(w ^ perp_grad n))

The weak form is the primary definition: for phi vanishing on the circle
    <L_n w, phi> = int Y(w) . grad phi,   Y(w) = -grad w + 3 pi_n(grad w) + *(w ^ perp_grad n)
which only needs n in W^(1,2). The strong form is the discrete operator of willmore_lab.solvers.
"""
from typing import Optional, Sequence, Union

import numpy as np
from tqdm import tqdm

from willmore_lab.disk_field import PolarField, PolarGrid, div, grad, integrate, norm_l2
from willmore_lab.solvers import GaussOperators, ProbeReport, make_rng, random_gauss_map, random_vector_field


def pairing_density(n: PolarField, w: PolarField, ops: GaussOperators = None) -> PolarField:
    """
    Y(w) = -grad w + 3 pi_n(grad w) + *(w ^ perp_grad n), cshape (2, m)
    """
    ops = GaussOperators(n) if ops is None else ops
    gradient = grad(w).values
    values = -gradient + 3 * ops.project(gradient, 0.0, 1.0) + ops.wedge_term(w).values
    return PolarField(n.grid, values, name='pairing_density')


def pair_with_gradient(Y: PolarField, grad_phi: PolarField) -> Union[float, np.array]:
    """
    int Y . grad phi, a vector for scalar phi and a number for R^m valued phi
    """
    if grad_phi.cshape == (2, 1):
        return integrate(PolarField(Y.grid, np.sum(Y.values * grad_phi.values, axis=2)))
    return integrate(PolarField(Y.grid, np.sum(Y.values * grad_phi.values, axis=(2, 3))))


def willmore_pairing(n: PolarField, w: PolarField, phi: PolarField, ops: GaussOperators = None) -> Union[float, np.array]:
    """
    weak form <L_n w, phi> for a test field vanishing on the circle
    :param n: gauss map blade field
    :param w: R^m valued field
    :param phi: test field, scalar (the pairing is then a vector of R^m) or R^m valued
    """
    return pair_with_gradient(pairing_density(n, w, ops), grad(phi))


def willmore_operator_apply(n: PolarField, w: PolarField, ops: GaussOperators = None) -> PolarField:
    """
    strong form of L_n w, meaningful when w is twice differentiable on the grid
    """
    ops = GaussOperators(n) if ops is None else ops
    return ops.ln_apply(w)


def constant_vector_image(n: PolarField, c: Sequence[float], ops: GaussOperators = None) -> PolarField:
    """
    L_n c for a constant vector, which reduces to -div(*(c ^ perp_grad n))
    """
    ops = GaussOperators(n) if ops is None else ops
    constant = PolarField.constant(n.grid, np.asarray(c, dtype=float))
    return -div(ops.wedge_term(constant))


#
# Self adjointness
#
def self_adjointness_defect(n: PolarField, v: PolarField, w: PolarField, ops: GaussOperators = None) -> float:
    """
    |<v, L_n w> - <L_n v, w>| / (|grad v|_2 |grad w|_2), both pairings in weak form
    """
    ops = GaussOperators(n) if ops is None else ops
    forward = willmore_pairing(n, w, v, ops)
    backward = willmore_pairing(n, v, w, ops)
    scale = norm_l2(grad(v)) * norm_l2(grad(w))
    return abs(forward - backward) / scale if scale > 0 else abs(forward - backward)


def self_adjointness_check(grid: PolarGrid, samples: int = 1000, seed: int = 0, m: int = 3,
                           amplitude: float = 0.2, ladder: Optional[Sequence[int]] = None,
                           progress: bool = False) -> ProbeReport:
    """
    relative self adjointness defects over random compactly supported (v, w) and random smooth n
    :return: ProbeReport of defects keyed by the radial node count
    """
    rng = make_rng(seed)
    sample_seeds = rng.integers(0, 2 ** 63 - 1, size=samples)
    grids = [grid.refined(n_r) for n_r in ladder] if ladder else [grid]
    report = ProbeReport('selfadjoint', samples, extras={'m': m, 'amplitude': amplitude})
    for rung in grids:
        defects = []
        for sample_seed in tqdm(sample_seeds, desc=f'selfadjoint {rung.n_r}', disable=not progress):
            sample_rng = make_rng(sample_seed)
            n = random_gauss_map(rung, sample_rng, m, amplitude)
            v = random_vector_field(rung, sample_rng, m, compact=True)
            w = random_vector_field(rung, sample_rng, m, compact=True)
            defects.append(self_adjointness_defect(n, v, w))
        report.ratios[rung.n_r] = defects
    return report
