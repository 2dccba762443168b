"""
Numerical probes of the estimates behind the inversion schemes

Probes measure ratios LHS / RHS of an inequality on concrete data and report them.
The monte carlo variants replay the same random data on every rung of a refinement ladder.
"""
import logging
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
from tqdm import tqdm

from willmore_lab import settings
from willmore_lab.disk_field import PolarField, PolarGrid, angular_split, grad, integrate, norm_l2, sup
from willmore_lab.disk_field.operators import hessian, inner
from willmore_lab.errors import SolverError
from willmore_lab.solvers.inversion import GaussOperators, ln_invert, require_small_energy
from willmore_lab.solvers.reports import EigenReport, ProbeReport, SolveReport
from willmore_lab.solvers.sampling import make_rng, random_gauss_map, random_polynomial, random_vector_field
from willmore_lab.solvers.wente import wente_solve

logger = logging.getLogger('willmore_lab')


def _ladder_grids(grid: PolarGrid, ladder: Optional[Sequence[int]]) -> List[PolarGrid]:
    if not ladder:
        return [grid]
    return [grid.refined(n_r) for n_r in ladder]


def _split_terms(v: PolarField) -> Tuple[float, float]:
    """
    |grad v_0|_inf^2 and int |grad v_perp|^2 / |x|^2 + int |hess v_perp|^2
    """
    v0, v_perp = angular_split(v)
    grad_perp = grad(v_perp).magnitude()
    weighted = integrate(grad_perp * grad_perp / PolarField(v.grid, v.grid.r ** 2))
    return sup(grad(v0)) ** 2, weighted + norm_l2(hessian(v_perp)) ** 2


#
# Wente
#
def wente_probe(grid: PolarGrid, samples: int = 200, seed: int = 0, ladder: Optional[Sequence[int]] = None,
                degree: int = 3, progress: bool = False) -> ProbeReport:
    """
    empirical wente constant over random polynomial pairs (a, b), replayed on each rung of the ladder
    :param grid: grid used when no ladder is given
    :param samples: count of random pairs
    :param seed: rng seed
    :param ladder: radial node counts
    :param degree: polynomial degree of a and b
    :param progress: show a progress bar
    :return: ProbeReport of |grad phi|_2 / (|grad a|_(2,inf) |grad b|_2)
    """
    rng = make_rng(seed)
    pairs = [(random_polynomial(rng, degree), random_polynomial(rng, degree)) for _ in range(samples)]
    report = ProbeReport('wente', samples, extras={'degree': degree})
    for rung in _ladder_grids(grid, ladder):
        ratios = []
        for p_a, p_b in tqdm(pairs, desc=f'wente {rung.n_r}', disable=not progress):
            a = PolarField.from_function(rung, p_a, boundary=True)
            b = PolarField.from_function(rung, p_b, boundary=True)
            ratio = wente_solve(a, b).estimate_ratio
            if ratio is not None:
                ratios.append(ratio)
        report.ratios[rung.n_r] = ratios
    return report


def angular_wente_probe(a: PolarField, b: PolarField) -> SolveReport:
    """
    mode split wente estimate: solves laplacian(phi) = jacobian(a, b), phi = 0 on the circle, and measures
    [|grad phi_0|_inf^2 + int |grad phi_perp|^2/|x|^2 + int |hess phi_perp|^2]
    / ([| |x| grad b |_inf^2 + int |grad b|^2] [int |grad a_perp|^2/|x|^2 + |grad a_0|_inf^2])
    """
    phi = wente_solve(a, b).solution
    mode_0, mode_perp = _split_terms(phi)

    a0, a_perp = angular_split(a)
    grad_a_perp = grad(a_perp).magnitude()
    a_side = integrate(grad_a_perp * grad_a_perp / PolarField(a.grid, a.grid.r ** 2)) + sup(grad(a0)) ** 2
    weighted_b = sup(grad(b).magnitude() * PolarField(b.grid, b.grid.r))
    b_side = weighted_b ** 2 + norm_l2(grad(b)) ** 2
    rhs = a_side * b_side
    return SolveReport(
        solution=phi,
        estimate_ratio=(mode_0 + mode_perp) / rhs if rhs > 0 else None,
        scheme='angular_wente',
        extras={'mode_0': mode_0, 'mode_perp': mode_perp, 'a_side': a_side, 'b_side': b_side},
    )


#
# Weighted estimate
#
def weighted_estimate_probe(n: PolarField, g: PolarField, epsilon: float = settings.SMALL_ENERGY_EPSILON,
                            ops: GaussOperators = None) -> SolveReport:
    """
    solves L_n v = g, v = 0 on the circle, and measures
    |grad v_0|_inf^2 + int |grad v_perp|^2 / |x|^2 + int |hess v_perp|^2  against  int |g|^2
    the mode 0 and mode perp contributions are reported separately
    :param n: gauss map blade field
    :param g: R^m valued data
    :return: SolveReport, estimate_ratio None for vacuous g = 0
    :raise SmallEnergyError: hypothesis norm above epsilon
    """
    ops = GaussOperators(n) if ops is None else ops
    energy = require_small_energy(n, epsilon)
    hypothesis = sup(grad(n).magnitude() * PolarField(n.grid, n.grid.r)) + energy
    if hypothesis > epsilon:
        logger.warning('weighted estimate hypothesis %.3e above epsilon %.3e', hypothesis, epsilon)

    solved = ln_invert(n, g, scheme='direct', epsilon=epsilon, ops=ops)
    v = solved.solution
    mode_0, mode_perp = _split_terms(v)
    rhs = norm_l2(g) ** 2
    return SolveReport(
        solution=v,
        estimate_ratio=(mode_0 + mode_perp) / rhs if rhs > 0 else None,
        scheme='weighted_estimate',
        final_residual=solved.final_residual,
        extras={'mode_0': mode_0, 'mode_perp': mode_perp, 'rhs': rhs, 'hypothesis': hypothesis,
                'vacuous': rhs == 0},
    )


def weighted_probe(grid: PolarGrid, samples: int = 50, seed: int = 0, ladder: Optional[Sequence[int]] = None,
                   m: int = 3, amplitude: float = 0.05, epsilon: float = settings.SMALL_ENERGY_EPSILON,
                   progress: bool = False) -> ProbeReport:
    """
    weighted estimate ratio over random small energy (n, g), replayed on each rung of the ladder
    """
    rng = make_rng(seed)
    sample_seeds = rng.integers(0, 2 ** 63 - 1, size=samples)
    report = ProbeReport('weighted', samples, extras={'m': m, 'amplitude': amplitude})
    for rung in _ladder_grids(grid, ladder):
        ratios = []
        for sample_seed in tqdm(sample_seeds, desc=f'weighted {rung.n_r}', disable=not progress):
            sample_rng = make_rng(sample_seed)
            n = random_gauss_map(rung, sample_rng, m, amplitude)
            g = random_vector_field(rung, sample_rng, m)
            ratio = weighted_estimate_probe(n, g, epsilon).estimate_ratio
            if ratio is not None:
                ratios.append(ratio)
        report.ratios[rung.n_r] = ratios
    return report


#
# Eigenpairs
#
def _orthonormalize(Y: np.array, sqrt_weights: np.array) -> np.array:
    q, _ = np.linalg.qr(Y * sqrt_weights[:, None])
    return q / sqrt_weights[:, None]


def eigenprobe(n: PolarField, k: int = 2, seed: int = 0, tol: float = settings.EIGEN_TOL,
               max_iterations: int = settings.MAX_ITERATIONS, epsilon: float = settings.SMALL_ENERGY_EPSILON,
               ladder: Optional[Sequence[int]] = None, n_factory: Callable[[PolarGrid], PolarField] = None,
               ops: GaussOperators = None) -> EigenReport:
    """
    k eigenpairs of L_n (dirichlet) of smallest |lambda| by subspace inverse iteration
    each sweep applies the factored inverse of L_n, orthonormalizes in L2 and takes Ritz pairs of the symmetric
    part of the projected operator, ties broken by the order eigh returns
    :param n: gauss map blade field
    :param k: count of eigenpairs
    :param seed: seed of the starting block
    :param tol: relative change of the Ritz values ending the iteration
    :param ladder: radial node counts for the regularity probe, needs n_factory
    :param n_factory: builds the gauss map on another grid
    :return: EigenReport, regularity_probe maps n_r to sup |grad phi_i|
    :raise SolverError: no convergence within max_iterations
    """
    require_small_energy(n, epsilon)
    ops = GaussOperators(n) if ops is None else ops
    grid = ops.grid
    size = ops.unknowns
    if not 0 < k < size:
        raise ValueError(f'Invalid eigenpair count: {k}')
    solve = ops.inverse('ln')
    sqrt_weights = np.sqrt(np.repeat(grid.cell_areas.ravel(), ops.m))

    Y = _orthonormalize(make_rng(seed).standard_normal((size, k)), sqrt_weights)
    ritz = np.zeros(k)
    for iteration in range(1, max_iterations + 1):
        Z = np.stack([solve(ops._field(Y[:, j])).values.ravel() for j in range(k)], axis=1)
        Z = _orthonormalize(Z, sqrt_weights)
        LZ = np.stack([ops.matvec('ln', Z[:, j]) for j in range(k)], axis=1)
        T = Z.T @ (LZ * sqrt_weights[:, None] ** 2)
        values, vectors = np.linalg.eigh(0.5 * (T + T.T))
        order = np.argsort(np.abs(values), kind='stable')
        Y = Z @ vectors[:, order]
        change = np.max(np.abs(values[order] - ritz)) / max(np.max(np.abs(values)), np.finfo(float).tiny)
        ritz = values[order]
        logger.debug('eigen iteration %d: ritz %s, change %.3e', iteration, ritz, change)
        if change < tol:
            break
    else:
        raise SolverError(f'Eigen iteration stagnated after {max_iterations} sweeps, last change {change:.3e}')

    fields = [ops._field(Y[:, j]) for j in range(k)]
    gram = np.array([[inner(a, b) for b in fields] for a in fields])
    applied = [ops.ln_apply(f) for f in fields]
    pairing = np.array([[inner(a, b) for b in applied] for a in fields])
    off_diagonal = pairing - np.diag(np.diag(pairing))
    scale = max(np.max(np.abs(ritz)), np.finfo(float).tiny)

    probe = {grid.n_r: [sup(grad(f)) for f in fields]}
    if ladder and n_factory is not None:
        for n_r in ladder:
            if n_r == grid.n_r:
                continue
            sub = eigenprobe(n_factory(grid.refined(n_r)), k, seed, tol, max_iterations, epsilon)
            probe.update(sub.regularity_probe)

    return EigenReport(
        eigenvalues=[float(v) for v in ritz],
        eigenfields=fields,
        orthonormality_defect=float(np.max(np.abs(gram - np.eye(k)))),
        diagonality_defect=float(np.max(np.abs(off_diagonal)) / scale),
        iterations=iteration,
        regularity_probe=dict(sorted(probe.items())),
    )


def expansion_residuals(w: PolarField, eigenfields: Sequence[PolarField]) -> List[float]:
    """
    |w - sum_(i<=j) <w, phi_i> phi_i|_2 for j = 1 .. k
    """
    residuals = []
    rest = w.without_boundary()
    for phi in eigenfields:
        rest = rest - phi.without_boundary() * inner(w, phi)
        residuals.append(norm_l2(rest))
    return residuals
