"""
Inversion of the operators

    A_n v = laplacian(v) - 3 div(pi_n grad v)
    L_n w = A_n w - div(*(w ^ perp_grad n))

on R^m valued fields vanishing on the circle, n a unit simple (m-2)-blade field.

The direct scheme assembles the discrete operator column by column and factors it (gmres with a poisson
preconditioner above DIRECT_ASSEMBLY_LIMIT unknowns). The featured schemes are the (A, F) fixed point for A_n
and the neumann series for L_n, both cross validated against the direct scheme.
"""
import logging
from typing import Callable, Optional

import numpy as np
from scipy.sparse import csc_matrix
from scipy.sparse.linalg import LinearOperator, gmres, splu

from willmore_lab import settings
from willmore_lab.disk_field import PolarField, curl, div, grad, h_minus1_norm, laplacian, norm_l2, perp_grad
from willmore_lab.disk_field.norms import gradient_energy, lorentz_norm, lp_norm
from willmore_lab.disk_field.operators import flux_trace, hessian
from willmore_lab.errors import SmallEnergyError, SolverError
from willmore_lab.exterior import apply_projector, embed_vectors, normal_projectors, wedge_star
from willmore_lab.exterior.fields import ambient_dimension
from willmore_lab.solvers.poisson import poisson
from willmore_lab.solvers.reports import SolveReport

logger = logging.getLogger('willmore_lab')

OPERATORS = ('an', 'ln')
AN_SCHEMES = ('fixed_point', 'direct')
LN_SCHEMES = ('neumann_series', 'direct')
DATA_CLASSES = ('h_minus_1', 'l1')


def gauss_energy(n: PolarField) -> float:
    """
    int |grad n|^2 over the disk
    """
    return gradient_energy(n)


def require_small_energy(n: PolarField, epsilon: float = settings.SMALL_ENERGY_EPSILON) -> float:
    """
    :return: int |grad n|^2
    :raise SmallEnergyError: if it exceeds epsilon
    """
    energy = gauss_energy(n)
    if energy > epsilon:
        raise SmallEnergyError(f'Gauss map energy {energy:.4e} exceeds epsilon {epsilon:.4e}')
    return energy


class GaussOperators:
    """
    A_n and L_n for a fixed gauss map, with the pointwise projectors and perp_grad n computed once
    """

    def __init__(self, n: PolarField):
        """
        :param n: unit simple (m-2)-blade field, cshape (2^m,)
        """
        self.n = n
        self.grid = n.grid
        self.m = ambient_dimension(n.cshape[-1])
        self.P = normal_projectors(n.values)
        self.dP = grad(PolarField(self.grid, self.P)).values
        self.perp_n = perp_grad(n).values
        self._inverses = {}

    #
    # Pointwise algebra
    #
    def project(self, X: np.array, tangent: float = 1.0, normal: float = 0.0) -> np.array:
        """
        (tangent pi_T + normal pi_n) applied to the last axis of a node array
        """
        normal_part = apply_projector(self.P, X)
        return tangent * (X - normal_part) + normal * normal_part

    def wedge_term(self, w: PolarField) -> PolarField:
        """
        *(w ^ perp_grad n) as a field of gradient pairs, cshape (2, *batch, m)
        """
        embedded = embed_vectors(w.values)[:, :, None]
        batch = w.values.ndim - 3
        perp = self.perp_n.reshape(self.perp_n.shape[:3] + (1,) * batch + self.perp_n.shape[3:])
        shape = np.broadcast_shapes(embedded.shape, perp.shape)
        return PolarField(self.grid, wedge_star(np.broadcast_to(embedded, shape), np.broadcast_to(perp, shape)))

    #
    # Operators
    #
    def an_apply(self, v: PolarField) -> PolarField:
        """
        laplacian(v) - 3 div(pi_n grad v) expanded by the product rule as
        (pi_T - 2 pi_n) laplacian(v) - 3 sum_i (d_i pi_n)(d_i v)
        every second derivative goes through the one mode-wise laplacian the poisson solver inverts
        """
        lap = self.project(laplacian(v).values, 1.0, -2.0)
        drift = np.einsum('rtimn,rti...n->rt...m', self.dP, grad(v).values)
        return PolarField(self.grid, lap - 3 * drift)

    def ln_apply(self, w: PolarField) -> PolarField:
        """
        A_n w - div(*(w ^ perp_grad n))
        """
        return PolarField(self.grid, self.an_apply(w).values - div(self.wedge_term(w)).values)

    def apply(self, operator: str, v: PolarField) -> PolarField:
        if operator == 'an':
            return self.an_apply(v)
        if operator == 'ln':
            return self.ln_apply(v)
        raise ValueError(f'Invalid operator: {operator}')

    #
    # Direct scheme
    #
    @property
    def unknowns(self) -> int:
        return self.grid.n_r * self.grid.n_theta * self.m

    def _field(self, vector: np.array) -> PolarField:
        """
        flat unknown vector to a field vanishing on the circle
        """
        values = vector.reshape(self.grid.shape + (self.m,))
        return PolarField(self.grid, values, boundary=np.zeros((self.grid.n_theta, self.m)))

    def matvec(self, operator: str, vector: np.array) -> np.array:
        return self.apply(operator, self._field(vector)).values.ravel()

    def assemble(self, operator: str) -> csc_matrix:
        """
        sparse matrix of the discrete operator on fields vanishing on the circle
        columns are computed in batches of unit fields carried on a batch axis before the R^m axis
        """
        grid = self.grid
        size = self.unknowns
        rows, cols, data = [], [], []
        for start in range(0, size, settings.ASSEMBLY_BATCH):
            stop = min(start + settings.ASSEMBLY_BATCH, size)
            count = stop - start
            basis = np.zeros((count, size))
            basis[np.arange(count), np.arange(start, stop)] = 1.0
            values = basis.reshape((count,) + grid.shape + (self.m,)).transpose(1, 2, 0, 3)
            batch = PolarField(grid, values, boundary=np.zeros((grid.n_theta, count, self.m)))
            out = self.apply(operator, batch).values.transpose(2, 0, 1, 3).reshape(count, size)
            column, row = np.nonzero(out)
            rows.append(row)
            cols.append(column + start)
            data.append(out[column, row])
        return csc_matrix((np.concatenate(data), (np.concatenate(rows), np.concatenate(cols))), shape=(size, size))

    def preconditioner(self, vector: np.array) -> np.array:
        """
        poisson((pi_T - 1/2 pi_n) y), the inverse of A_n when n is constant
        """
        values = self.project(vector.reshape(self.grid.shape + (self.m,)), 1.0, -0.5)
        return poisson(PolarField(self.grid, values)).values.ravel()

    def inverse(self, operator: str) -> Callable[[PolarField], PolarField]:
        """
        solver of operator(v) = g with v = 0 on the circle, built once per operator
        sparse lu up to DIRECT_ASSEMBLY_LIMIT unknowns, preconditioned gmres above
        """
        if operator not in OPERATORS:
            raise ValueError(f'Invalid operator: {operator}')
        if operator in self._inverses:
            return self._inverses[operator]

        size = self.unknowns
        if size <= settings.DIRECT_ASSEMBLY_LIMIT:
            lu = splu(self.assemble(operator))

            def solve(g: PolarField) -> PolarField:
                return self._field(lu.solve(np.ascontiguousarray(g.values.ravel())))
        else:
            A = LinearOperator((size, size), matvec=lambda x: self.matvec(operator, x), dtype=float)
            M = LinearOperator((size, size), matvec=self.preconditioner, dtype=float)

            def solve(g: PolarField) -> PolarField:
                rhs = g.values.ravel()
                try:
                    x, info = gmres(A, rhs, M=M, rtol=settings.POISSON_TOL, restart=50,
                                    maxiter=settings.MAX_ITERATIONS)
                except TypeError:
                    x, info = gmres(A, rhs, M=M, tol=settings.POISSON_TOL, restart=50,
                                    maxiter=settings.MAX_ITERATIONS)
                if info != 0:
                    raise SolverError(f'gmres did not converge for {operator} on {self.grid}: info={info}')
                return self._field(x)

        self._inverses[operator] = solve
        return solve

    def residual(self, operator: str, v: PolarField, g: PolarField) -> float:
        """
        |operator(v) - g|_2 / |g|_2, absolute when g = 0
        """
        misfit = norm_l2(self.apply(operator, v) - g.without_boundary())
        scale = norm_l2(g)
        return misfit / scale if scale > 0 else misfit


def _check_data(ops: GaussOperators, g: PolarField) -> None:
    if g.cshape != (ops.m,):
        raise ValueError(f'Invalid data cshape {g.cshape}, expected ({ops.m},)')
    if g.grid != ops.grid:
        raise ValueError(f'Data lives on {g.grid}, gauss map on {ops.grid}')


def _ratio(numerator: float, denominator: float) -> Optional[float]:
    return numerator / denominator if denominator > 0 else None


#
# A_n
#
def _an_fixed_point(ops: GaussOperators, g: PolarField, tol: float, max_iterations: int):
    """
    iterates the (A, F) system
        B = lap^-1 g, K = (pi_T - 1/2 pi_n) grad B, lap psi = -curl K
        G = (pi_T - 1/2 pi_n) perp_grad A, lap phi = div G with flux G . nu, F = grad phi + perp_grad psi
        lap A = curl((pi_T - 2 pi_n) F), A = 0 on the circle
    and recovers v from lap v = div(F + K)
    """
    grid = ops.grid
    B = poisson(g)
    K = PolarField(grid, ops.project(grad(B).values, 1.0, -0.5))
    psi = poisson(-curl(K))
    perp_psi = perp_grad(psi)

    A = PolarField.zeros(grid, (ops.m,), boundary=True)
    F = perp_psi
    ratios = []
    previous = None
    step = 0.0
    for iteration in range(1, max_iterations + 1):
        G = PolarField(grid, ops.project(perp_grad(A).values, 1.0, -0.5))
        phi = poisson(div(G), 'neumann', data=flux_trace(G))
        F = grad(phi) + perp_psi
        A_new = poisson(curl(PolarField(grid, ops.project(F.values, 1.0, -2.0))))

        step = norm_l2(grad(A_new) - grad(A))
        scale = max(norm_l2(grad(A_new)), np.finfo(float).tiny)
        if previous is not None and previous > 0:
            ratios.append(step / previous)
            logger.debug('an fixed point iteration %d: step %.3e, ratio %.3e', iteration, step, ratios[-1])
            if len(ratios) >= 2 and ratios[-1] >= 1.0 and step / scale > tol:
                raise SolverError(f'Fixed point contraction ratio {ratios[-1]:.3f} >= 1 at iteration {iteration}: '
                                  f'lower the gauss map energy below epsilon or use scheme="direct"')
        A = A_new
        previous = step
        if step <= tol * scale or step == 0.0:
            break
    else:
        raise SolverError(f'Fixed point did not converge in {max_iterations} iterations, last step {step:.3e}')

    G = PolarField(grid, ops.project(perp_grad(A).values, 1.0, -0.5))
    phi = poisson(div(G), 'neumann', data=flux_trace(G))
    F = grad(phi) + perp_psi
    v = poisson(div(F + K), name='v')
    relative = step / max(norm_l2(grad(A)), np.finfo(float).tiny) if step else 0.0
    return v, iteration, ratios, relative


def an_invert(n: PolarField, g: PolarField, scheme: str = 'fixed_point',
              epsilon: float = settings.SMALL_ENERGY_EPSILON, tol: float = settings.ITERATION_TOL,
              max_iterations: int = settings.MAX_ITERATIONS, ops: GaussOperators = None) -> SolveReport:
    """
    solves laplacian(v) - 3 div(pi_n grad v) = g with v = 0 on the circle
    :param n: gauss map blade field
    :param g: R^m valued data
    :param scheme: 'fixed_point' or 'direct'
    :param epsilon: bound on int |grad n|^2
    :param tol: relative step size ending the fixed point iteration
    :param max_iterations: cap on fixed point iterations
    :param ops: operators of n, reused across calls when given
    :return: SolveReport, estimate_ratio = |grad v|_2 / |g|_H^-1
    :raise SmallEnergyError: gauss map energy above epsilon
    :raise SolverError: contraction ratio >= 1 or no convergence
    """
    if scheme not in AN_SCHEMES:
        raise ValueError(f'Invalid scheme: {scheme}, expected one of {AN_SCHEMES}')
    energy = require_small_energy(n, epsilon)
    ops = GaussOperators(n) if ops is None else ops
    _check_data(ops, g)

    if scheme == 'direct':
        v = ops.inverse('an')(g)
        iterations, ratios, final = 1, [], 0.0
    else:
        v, iterations, ratios, final = _an_fixed_point(ops, g, tol, max_iterations)
        logger.info('an fixed point converged in %d iterations', iterations)

    residual = ops.residual('an', v, g)
    return SolveReport(
        solution=v,
        iterations=iterations,
        contraction_ratios=ratios,
        final_residual=final if scheme == 'fixed_point' else residual,
        estimate_ratio=_ratio(norm_l2(grad(v)), h_minus1_norm(g)),
        scheme=f'an_{scheme}',
        extras={'gauss_energy': energy, 'operator_residual': residual},
    )


#
# L_n
#
def regularity_probe(v: PolarField, g: PolarField, p: float = 2.0, radius: float = 0.5) -> Optional[float]:
    """
    |hess v|_(L^p(D_radius)) / (|g|_(L^p) + |v|_2)
    """
    denominator = lp_norm(g, p) + norm_l2(v)
    return _ratio(lp_norm(hessian(v), p, region=radius), denominator)


def ln_invert(n: PolarField, g: PolarField, data_class: str = 'h_minus_1', scheme: str = 'neumann_series',
              epsilon: float = settings.SMALL_ENERGY_EPSILON, tol: float = settings.ITERATION_TOL,
              max_iterations: int = settings.MAX_ITERATIONS, ops: GaussOperators = None) -> SolveReport:
    """
    solves L_n v = g with v = 0 on the circle
    the neumann series sums v_0 = A_n^-1 g, v_k = A_n^-1 div(*(v_(k-1) ^ perp_grad n)), each term by the direct
    A_n inverse, contraction ratios are |grad v_k|_2 / |grad v_(k-1)|_2
    :param n: gauss map blade field
    :param g: R^m valued data
    :param data_class: 'h_minus_1' reports |grad v|_2 / |g|_H^-1, 'l1' reports |grad v|_(2,inf) / |g|_L1
    :param scheme: 'neumann_series' or 'direct'
    :return: SolveReport with the interior regularity probe in extras
    :raise SmallEnergyError: gauss map energy above epsilon
    :raise SolverError: divergent series
    """
    if data_class not in DATA_CLASSES:
        raise ValueError(f'Invalid data class: {data_class}, expected one of {DATA_CLASSES}')
    if scheme not in LN_SCHEMES:
        raise ValueError(f'Invalid scheme: {scheme}, expected one of {LN_SCHEMES}')
    energy = require_small_energy(n, epsilon)
    ops = GaussOperators(n) if ops is None else ops
    _check_data(ops, g)

    ratios = []
    final = 0.0
    if scheme == 'direct':
        v = ops.inverse('ln')(g)
        iterations = 1
    else:
        an_inverse = ops.inverse('an')
        term = an_inverse(g)
        v = term
        previous = norm_l2(grad(term))
        iterations = 1
        while previous > tol * max(norm_l2(grad(v)), np.finfo(float).tiny):
            if iterations >= max_iterations:
                raise SolverError(f'Neumann series did not converge in {max_iterations} terms')
            term = an_inverse(div(ops.wedge_term(term)))
            size = norm_l2(grad(term))
            ratios.append(size / previous)
            iterations += 1
            logger.debug('neumann series term %d: |grad v_k| %.3e, ratio %.3e', iterations, size, ratios[-1])
            if ratios[-1] >= 1.0:
                raise SolverError(f'Neumann series diverges: ratio {ratios[-1]:.3f} at term {iterations}, '
                                  f'lower the gauss map energy below epsilon or use scheme="direct"')
            v = v + term
            previous = size
        final = previous / max(norm_l2(grad(v)), np.finfo(float).tiny)
        logger.info('neumann series converged with %d terms', iterations)

    if data_class == 'h_minus_1':
        estimate = _ratio(norm_l2(grad(v)), h_minus1_norm(g))
    else:
        estimate = _ratio(lorentz_norm(grad(v), '2,inf').value, lp_norm(g, 1.0))

    residual = ops.residual('ln', v, g)
    return SolveReport(
        solution=v,
        iterations=iterations,
        contraction_ratios=ratios,
        final_residual=final if scheme == 'neumann_series' else residual,
        estimate_ratio=estimate,
        scheme=f'ln_{scheme}',
        extras={'gauss_energy': energy, 'operator_residual': residual, 'data_class': data_class,
                'regularity_probe': regularity_probe(v, g)},
    )


def an_apply(n: PolarField, v: PolarField) -> PolarField:
    return GaussOperators(n).an_apply(v)


def ln_apply(n: PolarField, w: PolarField) -> PolarField:
    return GaussOperators(n).ln_apply(w)
