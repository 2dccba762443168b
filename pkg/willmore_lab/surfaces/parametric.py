from typing import Dict, NamedTuple

import numpy as np

from willmore_lab import settings
from willmore_lab.disk_field import PeriodicGrid
from willmore_lab.errors import ConformalityError


class ParametricCurvature(NamedTuple):
    H: np.array
    normB2: np.array
    area_element: np.array


class PeriodicImmersion:
    """
    A closed surface sampled on a flat torus, any parametrization

    Curvatures use the full first fundamental form, so the chart does not need to be conformal.
    """

    def __init__(self, grid: PeriodicGrid, values: np.array, source: str = 'user'):
        """
        :param grid: periodic grid
        :param values: array (n_u, n_v, m)
        :param source: catalog label or 'user'
        """
        values = np.asarray(values, dtype=float)
        if values.shape[:2] != grid.shape or values.ndim != 3 or values.shape[2] < 3:
            raise ValueError(f'Invalid values shape {values.shape} for {grid}, expected (n_u, n_v, m) with m >= 3')
        self.grid = grid
        self.values = values
        self.m = values.shape[2]
        self.source = source
        self._derivatives = None

    def copy(self, values: np.array = None, source: str = None) -> 'PeriodicImmersion':
        return PeriodicImmersion(self.grid, self.values if values is None else values,
                                 self.source if source is None else source)

    @property
    def derivatives(self) -> Dict[str, np.array]:
        if self._derivatives is None:
            d = self.grid.derivative
            u = d(self.values, 0)
            v = d(self.values, 1)
            self._derivatives = {'u': u, 'v': v, 'uu': d(u, 0), 'uv': d(u, 1), 'vv': d(v, 1)}
        return self._derivatives

    def curvature(self) -> ParametricCurvature:
        """
        mean curvature vector, |B|^2 and the area element
        B_ij = normal part of d_ij Phi, H = 1/2 g^ij B_ij, |B|^2 = g^ik g^jl B_ij . B_kl
        :raise ConformalityError: at a node where the first fundamental form degenerates
        """
        d = self.derivatives
        D = np.stack([d['u'], d['v']], axis=2)
        second = np.stack([np.stack([d['uu'], d['uv']], axis=2), np.stack([d['uv'], d['vv']], axis=2)], axis=2)
        g = np.einsum('uvim,uvjm->uvij', D, D)
        det = g[..., 0, 0] * g[..., 1, 1] - g[..., 0, 1] ** 2
        if (det < settings.DEGENERATE_GRADIENT_TOL).any():
            i, j = np.argwhere(det < settings.DEGENERATE_GRADIENT_TOL)[0]
            raise ConformalityError(f'Degenerate parametrization of {self.source} at node ({i}, {j}): '
                                    f'det g = {det[i, j]:.3e}')
        g_inv = np.stack([np.stack([g[..., 1, 1], -g[..., 0, 1]], axis=-1),
                          np.stack([-g[..., 0, 1], g[..., 0, 0]], axis=-1)], axis=-2) / det[..., None, None]

        dots = np.einsum('uvijm,uvlm->uvijl', second, D)
        coefficients = np.einsum('uvkl,uvijl->uvijk', g_inv, dots)
        B = second - np.einsum('uvijk,uvkm->uvijm', coefficients, D)
        H = 0.5 * np.einsum('uvij,uvijm->uvm', g_inv, B)
        normB2 = np.einsum('uvik,uvjl,uvijm,uvklm->uv', g_inv, g_inv, B, B)
        return ParametricCurvature(H, normB2, np.sqrt(det))

    def __repr__(self) -> str:
        return f'PeriodicImmersion(source={self.source}, m={self.m}, grid={self.grid})'
