import itertools
import logging
from dataclasses import dataclass, replace
from typing import Tuple

import numpy as np

from willmore_lab import settings
from willmore_lab.disk_field import PolarField, div, grad
from willmore_lab.disk_field.operators import flux_trace
from willmore_lab.errors import ConformalityError
from willmore_lab.exterior import embed_vectors, wedge_arrays
from willmore_lab.geometry.immersion import Immersion, require_conformal
from willmore_lab.solvers.poisson import poisson

logger = logging.getLogger('willmore_lab')


@dataclass
class FrameBundle:
    """
    Orthonormal frame (e1, e2, n_1, ..., n_(m-2)) along a conformal chart

    normals has cshape (m-2, m), gauge_conn has cshape (2, m-2, m-2) with
    gauge_conn[i, a, b] = (d_i n_a, n_b), gauss is the blade field n_1 ^ ... ^ n_(m-2) of cshape (2^m,)
    """
    e1: PolarField
    e2: PolarField
    lam: PolarField
    normals: PolarField
    gauge_conn: PolarField
    gauss: PolarField
    m: int
    gauged: bool = False

    @property
    def grid(self):
        return self.e1.grid

    @property
    def codimension(self) -> int:
        return self.m - 2

    def normal(self, alpha: int) -> PolarField:
        return PolarField(self.grid, self.normals.values[:, :, alpha])

    def orthonormality_defect(self) -> float:
        """
        max over nodes of |F F^T - I| for the frame matrix F with rows e1, e2, n_1, ...
        """
        frame = np.concatenate([self.e1.values[:, :, None], self.e2.values[:, :, None], self.normals.values], axis=2)
        gram = np.einsum('rtam,rtbm->rtab', frame, frame)
        return float(np.max(np.abs(gram - np.eye(self.m))))

    def antisymmetry_defect(self) -> float:
        omega = self.gauge_conn.values
        return float(np.max(np.abs(omega + np.swapaxes(omega, -1, -2))))

    def rotate_normals(self, theta: PolarField) -> 'FrameBundle':
        """
        rotates (n_1, n_2) by the angle field theta, the gauss map is unchanged
        gauge_conn[., 0, 1] changes by grad(theta)
        """
        if self.m != 4:
            raise ValueError(f'Normal rotation is only defined for m=4, got m={self.m}')
        n = self.normals.values
        c = np.cos(theta.values)
        s = np.sin(theta.values)
        rotated = np.stack([c * n[:, :, 0] + s * n[:, :, 1], -s * n[:, :, 0] + c * n[:, :, 1]], axis=2)
        normals = PolarField(self.grid, rotated, name='normals')
        return replace(self, normals=normals, gauge_conn=connection(normals), gauss=gauss_blades(normals),
                       gauged=False)


def connection(normals: PolarField) -> PolarField:
    """
    (d_i n_a, n_b) for a normal frame field of cshape (k, m)
    """
    gradient = grad(normals).values
    omega = np.einsum('rtiam,rtbm->rtiab', gradient, normals.values)
    return PolarField(normals.grid, omega, name='gauge_conn')


def gauss_blades(normals: PolarField) -> PolarField:
    """
    n_1 ^ ... ^ n_k as a blade field
    """
    values = normals.values
    blade = embed_vectors(values[:, :, 0])
    for alpha in range(1, values.shape[2]):
        blade = wedge_arrays(blade, embed_vectors(values[:, :, alpha]))
    return PolarField(normals.grid, blade, name='gauss')


def _normalize(v: np.array) -> np.array:
    return v / np.linalg.norm(v, axis=-1, keepdims=True)


def _gram_schmidt(e1: np.array, e2: np.array, basis: Tuple[int, ...]) -> Tuple[np.array, float]:
    """
    basis vectors E_j projected off the tangent plane and off each other
    :return: (normals of shape (n_r, n_theta, m-2, m), shortest projection before normalizing)
    """
    found = [e1, e2]
    normals = []
    shortest = np.inf
    for j in basis:
        candidate = np.zeros_like(e1)
        candidate[..., j] = 1.0
        for previous in found:
            candidate = candidate - np.sum(candidate * previous, axis=-1, keepdims=True) * previous
        length = np.linalg.norm(candidate, axis=-1)
        shortest = min(shortest, float(np.min(length)))
        candidate = candidate / np.maximum(length, settings.FRAME_DEGENERACY_TOL)[..., None]
        found.append(candidate)
        normals.append(candidate)
    return np.stack(normals, axis=2), shortest


def _normal_complement(e1: np.array, e2: np.array, m: int) -> np.array:
    """
    the same basis pair is used on the whole chart, E3 ... Em first, then the other subsets in order
    """
    default = tuple(range(2, m))
    subsets = [default] + [c for c in itertools.combinations(range(m), m - 2) if c != default]
    best, best_length, best_basis = None, -1.0, None
    for basis in subsets:
        normals, shortest = _gram_schmidt(e1, e2, basis)
        if shortest >= settings.FRAME_SELECTION_TOL:
            return normals
        if shortest > best_length:
            best, best_length, best_basis = normals, shortest, basis
    if best_length < settings.FRAME_DEGENERACY_TOL:
        raise ConformalityError(f'Near degenerate normal complement: every basis subset projects to length '
                                f'<= {best_length:.3e} somewhere on the chart')
    logger.warning('normal frame from basis %s, shortest projection %.3e', best_basis, best_length)
    return best


def build_frames(im: Immersion) -> FrameBundle:
    """
    tangent frame e_i = e^-lambda d_i Phi (e2 re-orthogonalized against e1), normal frame by the cross product for
    m=3 and by gram schmidt of E3 ... Em projected off the tangent plane otherwise, oriented so that
    (e1, e2, n_1, ..., n_(m-2)) is positive
    :param im: conformal immersion
    :return: FrameBundle, not gauged
    :raise ConformalityError: non conformal chart or near degenerate normal complement
    """
    lam, _ = require_conformal(im)
    grid = im.grid
    m = im.m
    g = im.gradient.values
    e1 = _normalize(g[:, :, 0])
    e2 = _normalize(g[:, :, 1] - np.sum(g[:, :, 1] * e1, axis=-1, keepdims=True) * e1)

    if m == 3:
        normals = np.cross(e1, e2)[:, :, None]
    else:
        normals = _normal_complement(e1, e2, m)
        frame = np.concatenate([e1[:, :, None], e2[:, :, None], normals], axis=2)
        flip = np.linalg.det(frame) < 0
        normals[flip, -1] *= -1.0

    normal_field = PolarField(grid, normals, name='normals')
    return FrameBundle(
        e1=PolarField(grid, e1, name='e1'),
        e2=PolarField(grid, e2, name='e2'),
        lam=lam,
        normals=normal_field,
        gauge_conn=connection(normal_field),
        gauss=gauss_blades(normal_field),
        m=m,
        gauged=False,
    )


def coulomb_gauge(fb: FrameBundle) -> FrameBundle:
    """
    rotates the normal frame so the connection is divergence free
    m=3 has a trivial gauge group and the frames come back unchanged. For m=4 the angle solves
    laplacian(theta) = -div(omega) with flux data -omega . nu, omega = (grad n_1, n_2)
    :param fb: frames
    :return: gauged frames
    :raise SolverError: if the neumann problem is incompatible beyond tolerance
    """
    if fb.m == 3:
        return replace(fb, gauged=True)
    if fb.m != 4:
        raise ValueError(f'Coulomb gauge is only supported for m in (3, 4), got m={fb.m}')

    omega = PolarField(fb.grid, fb.gauge_conn.values[:, :, :, 0, 1])
    theta = poisson(-div(omega), 'neumann', data=-flux_trace(omega), name='gauge_angle')
    gauged = fb.rotate_normals(theta)
    residual = div(PolarField(fb.grid, gauged.gauge_conn.values[:, :, :, 0, 1]))
    logger.debug('coulomb gauge residual |div omega| = %.3e', float(np.max(np.abs(residual.values))))
    return replace(gauged, gauged=True)
