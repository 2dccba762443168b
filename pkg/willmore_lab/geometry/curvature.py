from dataclasses import dataclass

import numpy as np

from willmore_lab.disk_field import PolarField, grad, laplacian
from willmore_lab.disk_field.grid import Region
from willmore_lab.geometry.frames import FrameBundle


@dataclass
class SecondFundamental:
    """
    h[a, i, j] = h^a_ij = -e^-lambda (d_i n_a, e_j), H = 1/2 sum_a (h^a_11 + h^a_22) n_a
    """
    h: PolarField
    H: PolarField
    H_comp: PolarField
    normB2: PolarField

    def symmetry_defect(self) -> float:
        h = self.h.values
        return float(np.max(np.abs(h[..., 0, 1] - h[..., 1, 0])))

    def mean_curvature_defect(self, fb: FrameBundle) -> float:
        """
        H rebuilt from h against the stored H
        """
        h = self.h.values
        rebuilt = np.einsum('rta,rtam->rtm', 0.5 * (h[..., 0, 0] + h[..., 1, 1]), fb.normals.values)
        return float(np.max(np.abs(rebuilt - self.H.values)))


@dataclass
class ShapeOperators:
    """
    A_w[i, j] = B(e_i, e_j) as a normal vector, so A_x(L)_ij = A_w[i, j] . L
    A_tilde_of_H = sum_ij B(e_i, e_j) (B(e_i, e_j) . H), K from the gauss equation on h
    """
    A_w: PolarField
    A_tilde_of_H: PolarField
    K: PolarField

    def A_tilde(self, L: PolarField) -> PolarField:
        """
        A~(L) through the adjoint composition A* A of the pointwise map N -> S
        """
        A = self.A_w.values.reshape(self.A_w.values.shape[:2] + (4, -1))
        gram = np.einsum('rtkm,rtkn->rtmn', A, A)
        return PolarField(L.grid, np.einsum('rtmn,rtn->rtm', gram, L.values))

    def gram_positivity(self, L: PolarField) -> float:
        """
        min over nodes of A~(L) . L, nonnegative
        """
        return float(np.min(np.sum(self.A_tilde(L).values * L.values, axis=-1)))


def second_fundamental(fb: FrameBundle) -> SecondFundamental:
    """
    second fundamental form and mean curvature from the frames
    """
    grid = fb.grid
    gradient = grad(fb.normals).values
    tangent = np.stack([fb.e1.values, fb.e2.values], axis=2)
    scale = np.exp(-fb.lam.values)[..., None, None]
    h = -np.einsum('rtiam,rtjm->rtaij', gradient, tangent) * scale
    H_comp = 0.5 * (h[..., 0, 0] + h[..., 1, 1])
    H = np.einsum('rta,rtam->rtm', H_comp, fb.normals.values)
    normB2 = np.sum(h ** 2, axis=(2, 3, 4))
    return SecondFundamental(
        h=PolarField(grid, h, name='h'),
        H=PolarField(grid, H, name='H'),
        H_comp=PolarField(grid, H_comp, name='H_comp'),
        normB2=PolarField(grid, normB2, name='normB2'),
    )


def shape_operators(fb: FrameBundle, sf: SecondFundamental) -> ShapeOperators:
    """
    pointwise shape operator, A~(H) and the gauss curvature of the chart
    """
    grid = fb.grid
    B = np.einsum('rtaij,rtam->rtijm', sf.h.values, fb.normals.values)
    pairing = np.einsum('rtijm,rtm->rtij', B, sf.H.values)
    A_tilde_of_H = np.einsum('rtijm,rtij->rtm', B, pairing)
    return ShapeOperators(
        A_w=PolarField(grid, B, name='A_w'),
        A_tilde_of_H=PolarField(grid, A_tilde_of_H, name='A_tilde_of_H'),
        K=gauss_curvature(sf),
    )


def gauss_curvature(sf: SecondFundamental) -> PolarField:
    """
    K = sum_a (h^a_11 h^a_22 - (h^a_12)^2) in the orthonormal frame, no derivative of lambda involved
    """
    h = sf.h.values
    off = 0.5 * (h[..., 0, 1] + h[..., 1, 0])
    K = np.sum(h[..., 0, 0] * h[..., 1, 1] - off ** 2, axis=-1)
    return PolarField(sf.h.grid, K, name='K')


def liouville_curvature(fb: FrameBundle) -> PolarField:
    """
    K = -e^(-2 lambda) laplacian(lambda), the intrinsic route to the gauss curvature
    """
    return PolarField(fb.grid, -np.exp(-2 * fb.lam.values) * laplacian(fb.lam).values, name='K_liouville')


def liouville_defect(fb: FrameBundle, sf: SecondFundamental, region: Region = None) -> float:
    """
    sup of the gap between the gauss equation and the liouville route to K
    """
    gap = gauss_curvature(sf).values - liouville_curvature(fb).values
    mask = fb.grid.region_mask(region)
    return float(np.max(np.abs(gap[mask])))
