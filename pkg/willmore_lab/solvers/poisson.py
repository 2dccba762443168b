import logging
from functools import lru_cache
from typing import Optional

import numpy as np
from scipy.sparse import csc_matrix
from scipy.sparse.linalg import splu

from willmore_lab import settings
from willmore_lab.disk_field import PolarField, PolarGrid
from willmore_lab.errors import SolverError

logger = logging.getLogger('willmore_lab')

BOUNDARY_CONDITIONS = ('dirichlet', 'neumann')


@lru_cache(maxsize=1024)
def _factorized_block(grid: PolarGrid, bc: str, mode: int):
    """
    lu factors of the radial system of one fourier mode
    unknowns are the interior coefficients followed by the boundary coefficient, the last row carries the
    boundary condition. Neumann mode 0 is bordered with a mean-zero row and an approximate left null vector column.
    """
    n = grid.n_r
    block, column = grid.laplacian_block(mode, bounded=True)
    bordered = bc == 'neumann' and mode == 0
    size = n + 2 if bordered else n + 1
    matrix = np.zeros((size, size))
    matrix[:n, :n] = block
    matrix[:n, n] = column
    if bc == 'dirichlet':
        matrix[n, n] = 1.0
    else:
        weights = grid.boundary_flux_weights
        matrix[n, n - (weights.shape[0] - 1):n] = weights[:-1]
        matrix[n, n] = weights[-1]
    if bordered:
        matrix[n + 1, :n] = grid.radial_weights
        matrix[:n, n + 1] = grid.radial_weights
        matrix[n, n + 1] = -1.0
    return splu(csc_matrix(matrix))


def _boundary_data(f: PolarField, data) -> np.array:
    shape = (f.grid.n_theta,) + f.cshape
    if data is None:
        return np.zeros(shape)
    data = np.asarray(data, dtype=float)
    if data.ndim == len(shape) - 1 and data.shape[:1] == shape[:1]:
        data = data[..., None]
    return np.broadcast_to(data, shape)


def neumann_mismatch(f: PolarField, data=None) -> np.array:
    """
    discrete compatibility defect int f - int g over the circle, divided by 2 pi, per component
    """
    grid = f.grid
    mean_f = np.tensordot(grid.radial_weights, f.values.mean(axis=1), axes=(0, 0))
    mean_g = _boundary_data(f, data).mean(axis=0)
    return mean_f - mean_g


def poisson(f: PolarField, bc: str = 'dirichlet', data=None, name: Optional[str] = None) -> PolarField:
    """
    solves laplacian(u) = f on the unit disk, one radial solve per fourier mode and component
    :param f: right hand side, any cshape
    :param bc: 'dirichlet' (u = data on the circle) or 'neumann' (du/dr = data on the circle)
    :param data: boundary data, None for homogeneous, scalar or array of shape (n_theta, *cshape)
    :param name: label of the solution
    :return: the solution, carrying its boundary values; neumann solutions have zero mean
    :raise SolverError: when neumann data is incompatible beyond tolerance
    """
    if bc not in BOUNDARY_CONDITIONS:
        raise ValueError(f'Invalid boundary condition: {bc}')
    grid = f.grid
    n = grid.n_r
    count = f.codomain_dim
    edge = _boundary_data(f, data)

    if bc == 'neumann':
        mismatch = np.atleast_1d(neumann_mismatch(f, data)).ravel()
        scale = (np.abs(np.tensordot(grid.radial_weights, np.abs(f.values).mean(axis=1), axes=(0, 0))).ravel()
                 + np.abs(edge).mean(axis=0).ravel() + settings.NEUMANN_COMPAT_FLOOR)
        worst = float(np.max(np.abs(mismatch) / scale))
        if worst > settings.NEUMANN_COMPAT_TOL:
            raise SolverError(f'Incompatible neumann data: relative mismatch {worst:.3e} '
                              f'exceeds {settings.NEUMANN_COMPAT_TOL:.1e}')
        if np.any(mismatch != 0):
            logger.info('neumann data corrected by mean %.3e (relative %.3e)', float(np.max(np.abs(mismatch))), worst)

    spectrum = np.fft.rfft(f.values.reshape(n, grid.n_theta, count), axis=1)
    edge_spectrum = np.fft.rfft(edge.reshape(grid.n_theta, count), axis=0)
    interior = np.zeros((n, grid.n_modes, count), dtype=complex)
    boundary = np.zeros((grid.n_modes, count), dtype=complex)

    for mode in range(grid.n_modes):
        lu = _factorized_block(grid, bc, mode)
        rhs = np.concatenate([spectrum[:, mode], edge_spectrum[mode][None]], axis=0)
        if bc == 'neumann' and mode == 0:
            rhs = np.concatenate([rhs, np.zeros((1, count))], axis=0)
        stacked = np.ascontiguousarray(np.concatenate([rhs.real, rhs.imag], axis=1))
        solved = lu.solve(stacked)
        solved = solved[:, :count] + 1j * solved[:, count:]
        interior[:, mode] = solved[:n]
        boundary[mode] = solved[n]

    values = np.fft.irfft(interior, n=grid.n_theta, axis=1).reshape(f.values.shape)
    edge_values = np.fft.irfft(boundary, n=grid.n_theta, axis=0).reshape((grid.n_theta,) + f.cshape)
    if bc == 'dirichlet':
        edge_values = edge
    return PolarField(grid, values, boundary=edge_values, name=name)
