from functools import cached_property
from typing import Optional, Tuple, Union

import numpy as np

from willmore_lab import settings
from willmore_lab.disk_field.utils import fornberg_weights, pairwise_sum

Region = Optional[Union[float, Tuple[float, float]]]


class PolarGrid:
    """
    Spectral polar grid of the unit disk

    Radial nodes are Gauss-Legendre nodes in s = r^2 mapped back to r, so there is no node at r = 0 or r = 1.
    Angular nodes are uniform, theta_k = 2 pi k / n_theta.
    The quadrature integrates every polynomial in r^2 of degree < 2 n_r times any trig polynomial exactly.

    Radial derivatives use Fornberg weights on the line through the origin: the value at -r along angle theta
    is the value at r along theta + pi, which is a grid node because n_theta is even.
    Angular derivatives are spectral with the nyquist mode dropped.
    """

    def __init__(self, n_r: int = settings.DEFAULT_N_R, n_theta: int = settings.DEFAULT_N_THETA,
                 fd_order: int = settings.DEFAULT_FD_ORDER):
        """
        :param n_r: count of radial nodes
        :param n_theta: count of angular nodes, even and >= 8
        :param fd_order: order of the radial finite differences, even
        """
        self.n_r = int(n_r)
        self.n_theta = int(n_theta)
        self.fd_order = int(fd_order)
        self._validate_inputs()

        x, w = np.polynomial.legendre.leggauss(self.n_r)
        s = (x + 1) / 2
        self.s_weights = w / 2
        self.r_nodes = np.sqrt(s)
        # int_0^1 g(r) r dr = 1/2 int_0^1 g(sqrt(s)) ds
        self.radial_weights = self.s_weights / 2
        self.theta_nodes = 2 * np.pi * np.arange(self.n_theta) / self.n_theta
        self.d_theta = 2 * np.pi / self.n_theta
        self.cell_areas = np.outer(self.radial_weights, np.full(self.n_theta, self.d_theta))

        self.r, self.theta = np.meshgrid(self.r_nodes, self.theta_nodes, indexing='ij')
        self.x1 = self.r * np.cos(self.theta)
        self.x2 = self.r * np.sin(self.theta)

    def _validate_inputs(self) -> None:
        """
        Ensures the inputs are valid
        :raise ValueError: if inputs are invalid
        """
        if self.n_theta < settings.MIN_N_THETA or self.n_theta % 2 != 0:
            raise ValueError(f'Invalid n_theta: {self.n_theta}, must be even and >= {settings.MIN_N_THETA}')
        if self.fd_order < 2 or self.fd_order % 2 != 0:
            raise ValueError(f'Invalid fd_order: {self.fd_order}, must be even and >= 2')
        if self.n_r < self.fd_order + 1:
            raise ValueError(f'Invalid n_r: {self.n_r}, must be at least fd_order + 1 = {self.fd_order + 1}')

    @property
    def key(self) -> Tuple[int, int, int]:
        return self.n_r, self.n_theta, self.fd_order

    @property
    def shape(self) -> Tuple[int, int]:
        return self.n_r, self.n_theta

    @property
    def n_modes(self) -> int:
        return self.n_theta // 2 + 1

    def __eq__(self, other) -> bool:
        return isinstance(other, PolarGrid) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        return f'PolarGrid(n_r={self.n_r}, n_theta={self.n_theta}, fd_order={self.fd_order})'

    def copy(self, **kwargs) -> 'PolarGrid':
        """
        Creates a copy of the grid
        :param kwargs: the parameters to override when doing the copy
        """
        base_kwargs = {'n_r': self.n_r, 'n_theta': self.n_theta, 'fd_order': self.fd_order}
        base_kwargs.update(kwargs)
        return self.__class__(**base_kwargs)

    def refined(self, n_r: int) -> 'PolarGrid':
        """
        grid on the next rung of a ladder, n_theta follows n_r with the same ratio
        """
        return self.copy(n_r=n_r, n_theta=max(settings.MIN_N_THETA, 2 * n_r))

    #
    # Regions
    #
    def region_mask(self, region: Region = None) -> np.array:
        """
        boolean mask of the nodes inside a region
        :param region: None for the whole disk, a radius rho for the disk D_rho, (r_in, r_out) for an annulus
        :return: bool array of shape (n_r, n_theta)
        """
        if region is None:
            return np.ones(self.shape, dtype=bool)
        if isinstance(region, (tuple, list)):
            r_in, r_out = region
            return (self.r >= r_in) & (self.r < r_out)
        return self.r < float(region)

    #
    # Radial stencils
    #
    def _extended_nodes(self, bounded: bool) -> np.array:
        nodes = np.concatenate([-self.r_nodes[::-1], self.r_nodes])
        if bounded:
            nodes = np.append(nodes, 1.0)
        return nodes

    def _derivative_matrix(self, derivative: int, bounded: bool) -> np.array:
        nodes = self._extended_nodes(bounded)
        size = self.fd_order + derivative
        matrix = np.zeros((self.n_r, nodes.shape[0]))
        for k in range(self.n_r):
            center = self.n_r + k
            start = min(max(center - size // 2, 0), nodes.shape[0] - size)
            window = nodes[start:start + size]
            matrix[k, start:start + size] = fornberg_weights(self.r_nodes[k], window, derivative)[:, derivative]
        return matrix

    @cached_property
    def radial_d1(self) -> np.array:
        return self._derivative_matrix(1, bounded=False)

    @cached_property
    def radial_d2(self) -> np.array:
        return self._derivative_matrix(2, bounded=False)

    @cached_property
    def radial_d1_bounded(self) -> np.array:
        return self._derivative_matrix(1, bounded=True)

    @cached_property
    def radial_d2_bounded(self) -> np.array:
        return self._derivative_matrix(2, bounded=True)

    def mode_matrix(self, matrix: np.array, mode: int) -> Tuple[np.array, Optional[np.array]]:
        """
        folds an extended-node stencil matrix onto the interior nodes for one fourier mode
        the ghost node -r_k carries (-1)^mode times the mode coefficient at r_k
        :param matrix: one of the radial derivative matrices
        :param mode: fourier mode
        :return: (n_r, n_r) interior block and the boundary column (None for free stencils)
        """
        n = self.n_r
        sign = -1.0 if mode % 2 else 1.0
        interior = matrix[:, n:2 * n] + sign * matrix[:, n - 1::-1]
        boundary = matrix[:, 2 * n] if matrix.shape[1] == 2 * n + 1 else None
        return interior, boundary

    def laplacian_block(self, mode: int, bounded: bool) -> Tuple[np.array, Optional[np.array]]:
        """
        radial laplacian D2 + D1 / r - mode^2 / r^2 for one fourier mode
        :param mode: fourier mode
        :param bounded: use the stencils that reach the boundary node
        :return: (n_r, n_r) interior block and the boundary column (None when not bounded)
        """
        cache = self.__dict__.setdefault('_laplacian_blocks', {})
        if (mode, bounded) not in cache:
            d1, b1 = self.mode_matrix(self.radial_d1_bounded if bounded else self.radial_d1, mode)
            d2, b2 = self.mode_matrix(self.radial_d2_bounded if bounded else self.radial_d2, mode)
            inv_r = 1.0 / self.r_nodes
            block = d2 + inv_r[:, None] * d1 - np.diag(mode ** 2 * inv_r ** 2)
            column = b2 + inv_r * b1 if bounded else None
            cache[(mode, bounded)] = (block, column)
        return cache[(mode, bounded)]

    @cached_property
    def roundoff_floor(self) -> float:
        """
        machine epsilon times the row sum norm of the mode 1 radial laplacian, the noise of one laplacian of O(1) data
        """
        block, _ = self.laplacian_block(1, bounded=False)
        return float(np.finfo(float).eps * np.max(np.sum(np.abs(block), axis=1)))

    def extend(self, values: np.array, boundary: Optional[np.array] = None) -> np.array:
        """
        values along the full diameters, ready for the radial stencils
        :param values: array of shape (n_r, n_theta, ...)
        :param boundary: optional values at r = 1, shape (n_theta, ...)
        :return: array of shape (2 n_r [+1], n_theta, ...)
        """
        ghost = np.roll(values[::-1], self.n_theta // 2, axis=1)
        parts = [ghost, values]
        if boundary is not None:
            parts.append(boundary[None])
        return np.concatenate(parts, axis=0)

    @cached_property
    def boundary_interpolation(self) -> np.array:
        """
        weights extrapolating the outermost interior nodes to r = 1
        """
        size = self.fd_order + 1
        return fornberg_weights(1.0, self.r_nodes[-size:], 0)[:, 0]

    @cached_property
    def boundary_flux_weights(self) -> np.array:
        """
        weights of d/dr at r = 1 over the outermost interior nodes followed by the boundary node
        """
        size = self.fd_order + 1
        nodes = np.append(self.r_nodes[-(size - 1):], 1.0)
        return fornberg_weights(1.0, nodes, 1)[:, 1]

    @cached_property
    def boundary_flux_weights_free(self) -> np.array:
        """
        weights of d/dr at r = 1 using interior nodes only
        """
        size = self.fd_order + 1
        return fornberg_weights(1.0, self.r_nodes[-size:], 1)[:, 1]

    #
    # Angular spectrum
    #
    @cached_property
    def modes(self) -> np.array:
        return np.arange(self.n_modes)

    @cached_property
    def mode_mask(self) -> np.array:
        """
        per radius mask of the fourier modes kept by the angular derivative
        near the origin a smooth field carries r^m in mode m, modes below the roundoff level are noise
        """
        log_r = np.log(self.r_nodes)
        cap = np.ceil(np.log(settings.ANGULAR_MODE_CUTOFF) / log_r)
        cap = np.clip(cap, settings.MIN_ANGULAR_MODES, self.n_theta // 2 - 1)
        return (self.modes[None, :] <= cap[:, None]) & (self.modes[None, :] < self.n_theta // 2)


class PeriodicGrid:
    """
    Uniform grid of a periodic rectangle (flat torus) with spectral derivatives and trapezoid quadrature
    """

    def __init__(self, n_u: int, n_v: int, u_period: float = 2 * np.pi, v_period: float = 2 * np.pi):
        """
        :param n_u: count of nodes in u, even
        :param n_v: count of nodes in v, even
        :param u_period: period in u
        :param v_period: period in v
        """
        self.n_u = int(n_u)
        self.n_v = int(n_v)
        self.u_period = float(u_period)
        self.v_period = float(v_period)
        if self.n_u < 4 or self.n_v < 4 or self.n_u % 2 or self.n_v % 2:
            raise ValueError(f'Invalid periodic grid: {self.n_u}x{self.n_v}, both counts must be even and >= 4')
        if self.u_period <= 0 or self.v_period <= 0:
            raise ValueError(f'Invalid periods: {self.u_period}, {self.v_period}')

        self.u_nodes = self.u_period * np.arange(self.n_u) / self.n_u
        self.v_nodes = self.v_period * np.arange(self.n_v) / self.n_v
        self.u, self.v = np.meshgrid(self.u_nodes, self.v_nodes, indexing='ij')
        self.cell_area = (self.u_period / self.n_u) * (self.v_period / self.n_v)

    @property
    def shape(self) -> Tuple[int, int]:
        return self.n_u, self.n_v

    def __repr__(self) -> str:
        return f'PeriodicGrid(n_u={self.n_u}, n_v={self.n_v}, u_period={self.u_period}, v_period={self.v_period})'

    def derivative(self, values: np.array, axis: int) -> np.array:
        """
        spectral derivative along u (axis 0) or v (axis 1)
        :param values: array of shape (n_u, n_v, ...)
        :param axis: 0 or 1
        :return: derivative, same shape
        """
        n = values.shape[axis]
        period = self.u_period if axis == 0 else self.v_period
        wavenumbers = 2 * np.pi * np.fft.rfftfreq(n, d=period / n)
        wavenumbers[-1] = 0.0
        shape = [1] * values.ndim
        shape[axis] = wavenumbers.shape[0]
        spectrum = np.fft.rfft(values, axis=axis) * (1j * wavenumbers.reshape(shape))
        return np.fft.irfft(spectrum, n=n, axis=axis)

    def integrate(self, values: np.array) -> float:
        """
        trapezoid rule, spectrally accurate for periodic integrands
        """
        return float(pairwise_sum(np.ascontiguousarray(values, dtype=float).ravel()) * self.cell_area)
