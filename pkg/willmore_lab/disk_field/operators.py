from typing import Tuple, Union

import numpy as np

from willmore_lab.disk_field.field import PolarField
from willmore_lab.disk_field.grid import PolarGrid, Region
from willmore_lab.disk_field.utils import pairwise_sum_rows


def _expand(array: np.array, ndim: int) -> np.array:
    """
    appends singleton axes so a (n_r, n_theta) array broadcasts against node values
    """
    return array.reshape(array.shape + (1,) * (ndim - array.ndim))


#
# Derivatives
#
def radial_derivative(f: PolarField, derivative: int = 1) -> np.array:
    """
    d/dr (or d2/dr2) of a field along the diameters, uses boundary values when the field carries them
    :param f: the field
    :param derivative: 1 or 2
    :return: node array shaped like f.values
    """
    grid = f.grid
    bounded = f.boundary is not None
    if derivative == 1:
        matrix = grid.radial_d1_bounded if bounded else grid.radial_d1
    elif derivative == 2:
        matrix = grid.radial_d2_bounded if bounded else grid.radial_d2
    else:
        raise ValueError(f'Invalid derivative: {derivative}')
    return np.tensordot(matrix, grid.extend(f.values, f.boundary), axes=(1, 0))


def angular_derivative(grid: PolarGrid, values: np.array) -> np.array:
    """
    spectral d/dtheta, the nyquist mode and the modes under the per radius cap are dropped
    :param grid: the grid
    :param values: node array of shape (n_r, n_theta, ...)
    :return: d/dtheta, same shape
    """
    spectrum = np.fft.rfft(values, axis=1)
    factor = 1j * grid.modes[None, :] * grid.mode_mask
    spectrum = spectrum * _expand(factor, spectrum.ndim)
    return np.fft.irfft(spectrum, n=grid.n_theta, axis=1)


def grad(f: PolarField) -> PolarField:
    """
    cartesian gradient (d/dx1, d/dx2) through the polar chain rule
    d1 = cos(t) d/dr - sin(t)/r d/dt, d2 = sin(t) d/dr + cos(t)/r d/dt
    :param f: field of cshape c
    :return: field of cshape (2, *c)
    """
    grid = f.grid
    ndim = f.values.ndim
    d_r = radial_derivative(f)
    d_theta = angular_derivative(grid, f.values)
    cos = _expand(np.cos(grid.theta), ndim)
    sin = _expand(np.sin(grid.theta), ndim)
    inv_r = _expand(1.0 / grid.r, ndim)
    d1 = cos * d_r - sin * inv_r * d_theta
    d2 = sin * d_r + cos * inv_r * d_theta
    return PolarField(grid, np.stack([d1, d2], axis=2))


def perp_grad(f: PolarField) -> PolarField:
    """
    rotated gradient (-d/dx2, d/dx1)
    """
    g = grad(f).values
    return PolarField(f.grid, np.stack([-g[:, :, 1], g[:, :, 0]], axis=2))


def rotate(X: PolarField) -> PolarField:
    """
    rotates a field of gradient pairs by pi/2, maps grad to perp_grad
    """
    return PolarField(X.grid, np.stack([-X.values[:, :, 1], X.values[:, :, 0]], axis=2))


def _check_pairs(X: PolarField) -> None:
    if X.cshape[0] != 2:
        raise ValueError(f'Invalid field of cshape {X.cshape}, expected gradient pairs with leading axis 2')


def div(X: PolarField) -> PolarField:
    """
    d1 X_1 + d2 X_2 for a field of gradient pairs
    :param X: field of cshape (2, *c)
    :return: field of cshape c (scalars get (1,))
    """
    _check_pairs(X)
    g = grad(X).values
    out = g[:, :, 0, 0] + g[:, :, 1, 1]
    return PolarField(X.grid, out)


def curl(X: PolarField) -> PolarField:
    """
    d1 X_2 - d2 X_1 for a field of gradient pairs
    """
    _check_pairs(X)
    g = grad(X).values
    return PolarField(X.grid, g[:, :, 0, 1] - g[:, :, 1, 0])


def laplacian(f: PolarField) -> PolarField:
    """
    mode-wise laplacian d2/dr2 + 1/r d/dr + 1/r^2 d2/dt2
    this is the exact operator the poisson solver inverts, bounded stencils are used when f carries boundary values
    :param f: any field
    :return: field of the same cshape
    """
    grid = f.grid
    bounded = f.boundary is not None
    spectrum = np.fft.rfft(f.values, axis=1)
    edge = np.fft.rfft(f.boundary, axis=0) if bounded else None
    out = np.empty_like(spectrum)
    for mode in range(grid.n_modes):
        block, column = grid.laplacian_block(mode, bounded)
        out[:, mode] = np.tensordot(block, spectrum[:, mode], axes=(1, 0))
        if bounded:
            out[:, mode] += _expand(column, out[:, mode].ndim) * edge[mode][None]
    return PolarField(grid, np.fft.irfft(out, n=grid.n_theta, axis=1))


def hessian(f: PolarField) -> PolarField:
    """
    second cartesian derivatives, cshape (2, 2, *c)
    """
    return grad(grad(f))


#
# Quadrature
#
def integrate(f: PolarField, region: Region = None) -> Union[float, np.array]:
    """
    sum of f times the cell areas with a fixed pairwise reduction tree
    :param f: the field
    :param region: optional sub-disk radius or (r_in, r_out) annulus
    :return: float for scalars, array of cshape otherwise
    """
    grid = f.grid
    weights = grid.cell_areas * grid.region_mask(region)
    weighted = f.values * _expand(weights, f.values.ndim)
    rows = np.ascontiguousarray(weighted.reshape(grid.n_r * grid.n_theta, -1).T)
    sums = pairwise_sum_rows(rows)
    if f.is_scalar:
        return float(sums[0])
    return sums.reshape(f.cshape)


def inner(f: PolarField, g: PolarField, region: Region = None) -> float:
    """
    L2 inner product summed over every component
    """
    grid = f.grid
    product = PolarField(grid, np.sum((f.values * g.values).reshape(grid.shape + (-1,)), axis=-1))
    return integrate(product, region)


def angular_split(v: PolarField) -> Tuple[PolarField, PolarField]:
    """
    splits a field into its angular mean per radius and the rest
    :param v: any field
    :return: (v0, v_perp) with v = v0 + v_perp
    """
    grid = v.grid
    mean = np.fft.rfft(v.values, axis=1)[:, :1].real / grid.n_theta
    v0_values = np.broadcast_to(mean, v.values.shape).copy()
    v0_boundary = None
    v_perp_boundary = None
    if v.boundary is not None:
        edge_mean = np.fft.rfft(v.boundary, axis=0)[:1].real / grid.n_theta
        v0_boundary = np.broadcast_to(edge_mean, v.boundary.shape)
        v_perp_boundary = v.boundary - v0_boundary
    v0 = PolarField(grid, v0_values, boundary=v0_boundary)
    v_perp = PolarField(grid, v.values - v0_values, boundary=v_perp_boundary)
    return v0, v_perp


#
# Boundary
#
def boundary_trace(f: PolarField) -> np.array:
    """
    values at r = 1, the attached boundary values or an extrapolation of the outermost nodes
    :return: array of shape (n_theta, *cshape)
    """
    if f.boundary is not None:
        return f.boundary
    grid = f.grid
    weights = grid.boundary_interpolation
    return np.tensordot(weights, f.values[-weights.shape[0]:], axes=(0, 0))


def normal_derivative_trace(f: PolarField) -> np.array:
    """
    d/dr at r = 1
    :return: array of shape (n_theta, *cshape)
    """
    grid = f.grid
    if f.boundary is not None:
        weights = grid.boundary_flux_weights
        stacked = np.concatenate([f.values[-(weights.shape[0] - 1):], f.boundary[None]], axis=0)
        return np.tensordot(weights, stacked, axes=(0, 0))
    weights = grid.boundary_flux_weights_free
    return np.tensordot(weights, f.values[-weights.shape[0]:], axes=(0, 0))


def outward_normal(grid: PolarGrid) -> np.array:
    """
    unit outward normal at the boundary nodes, shape (n_theta, 2)
    """
    return np.stack([np.cos(grid.theta_nodes), np.sin(grid.theta_nodes)], axis=1)


def flux_trace(X: PolarField) -> np.array:
    """
    X . nu at r = 1 for a field of gradient pairs
    :return: array of shape (n_theta, *c)
    """
    _check_pairs(X)
    trace = boundary_trace(X)
    nu = outward_normal(X.grid)
    return _expand(nu[:, 0], trace.ndim - 1) * trace[:, 0] + _expand(nu[:, 1], trace.ndim - 1) * trace[:, 1]


def tangential_trace(X: PolarField) -> np.array:
    """
    X . tau at r = 1 with tau = (-sin, cos)
    """
    _check_pairs(X)
    trace = boundary_trace(X)
    nu = outward_normal(X.grid)
    return -_expand(nu[:, 1], trace.ndim - 1) * trace[:, 0] + _expand(nu[:, 0], trace.ndim - 1) * trace[:, 1]


def boundary_integral(grid: PolarGrid, values: np.array) -> Union[float, np.array]:
    """
    line integral over the unit circle of boundary values
    :param grid: the grid
    :param values: array of shape (n_theta, ...)
    :return: float for (n_theta,) or (n_theta, 1) input, array otherwise
    """
    values = np.asarray(values, dtype=float)
    rows = np.ascontiguousarray(values.reshape(grid.n_theta, -1).T)
    sums = pairwise_sum_rows(rows) * grid.d_theta
    if values.ndim == 1 or values.shape[1:] == (1,):
        return float(sums[0])
    return sums.reshape(values.shape[1:])
