from typing import Dict, Optional, Tuple

import numpy as np

from willmore_lab import settings
from willmore_lab.disk_field import PolarField, PolarGrid, grad
from willmore_lab.errors import ConformalityError


class Immersion:
    """
    A map Phi from the unit disk into R^m sampled on a PolarGrid

    The gradient, conformal factor and conformality defect are computed once and cached.
    """

    def __init__(self, phi: PolarField, source: str = 'user', reference: Optional[Dict[str, PolarField]] = None,
                 conformal_tol: float = settings.CONFORMAL_DEFECT_TOL):
        """
        :param phi: field of cshape (m,), m >= 3
        :param source: catalog id or 'user'
        :param reference: closed form fields attached by the catalog ('lambda', 'H', 'n', ...)
        :param conformal_tol: conformality defect accepted by operations that need a conformal chart
        """
        if len(phi.cshape) != 1 or phi.cshape[0] < 3:
            raise ValueError(f'Invalid immersion cshape {phi.cshape}, expected (m,) with m >= 3')
        self.phi = phi
        self.m = phi.cshape[0]
        self.source = source
        self.reference = {} if reference is None else dict(reference)
        self.conformal_tol = conformal_tol

        self._gradient = None
        self._conformal = None

    @property
    def grid(self) -> PolarGrid:
        return self.phi.grid

    @property
    def gradient(self) -> PolarField:
        """
        d Phi / dx_i, cshape (2, m)
        """
        if self._gradient is None:
            self._gradient = grad(self.phi)
        return self._gradient

    def immersion_kappa(self) -> float:
        """
        min over nodes of |d1 Phi ^ d2 Phi| / |grad Phi|^2, 1/2 for conformal charts
        """
        g = self.gradient.values
        n1 = np.sum(g[:, :, 0] ** 2, axis=-1)
        n2 = np.sum(g[:, :, 1] ** 2, axis=-1)
        cross = np.sum(g[:, :, 0] * g[:, :, 1], axis=-1)
        area = np.sqrt(np.maximum(n1 * n2 - cross ** 2, 0.0))
        return float(np.min(area / (n1 + n2)))

    def copy(self, phi: PolarField = None, source: str = None) -> 'Immersion':
        return Immersion(self.phi if phi is None else phi, self.source if source is None else source,
                         self.reference, self.conformal_tol)

    def __repr__(self) -> str:
        return f'Immersion(source={self.source}, m={self.m}, grid={self.grid})'


def conformal_factor(im: Immersion) -> Tuple[PolarField, float]:
    """
    lambda = log |d1 Phi| and the conformality defect
    defect = max over nodes of ||d1 Phi| - |d2 Phi|| / e^lambda + |d1 Phi . d2 Phi| / e^(2 lambda)
    :param im: the immersion
    :return: (lambda field, defect)
    :raise ConformalityError: at a degenerate node, |grad Phi| < 1e-10
    """
    if im._conformal is not None:
        return im._conformal

    grid = im.grid
    g = im.gradient.values
    length1 = np.sqrt(np.sum(g[:, :, 0] ** 2, axis=-1))
    length2 = np.sqrt(np.sum(g[:, :, 1] ** 2, axis=-1))
    total = np.sqrt(length1 ** 2 + length2 ** 2)
    degenerate = total < settings.DEGENERATE_GRADIENT_TOL
    if degenerate.any():
        i, j = np.argwhere(degenerate)[0]
        raise ConformalityError(f'Degenerate immersion at node ({i}, {j}), r={grid.r_nodes[i]:.6g}, '
                                f'theta={grid.theta_nodes[j]:.6g}: |grad Phi| = {total[i, j]:.3e}')
    if (length1 < settings.DEGENERATE_GRADIENT_TOL).any():
        i, j = np.argwhere(length1 < settings.DEGENERATE_GRADIENT_TOL)[0]
        raise ConformalityError(f'Degenerate immersion at node ({i}, {j}): |d1 Phi| = {length1[i, j]:.3e}')

    cross = np.abs(np.sum(g[:, :, 0] * g[:, :, 1], axis=-1))
    defect = float(np.max(np.abs(length1 - length2) / length1 + cross / length1 ** 2))
    lam = PolarField(grid, np.log(length1), name='lambda')
    im._conformal = (lam, defect)
    return im._conformal


def require_conformal(im: Immersion) -> Tuple[PolarField, float]:
    """
    conformal_factor that refuses charts above the immersion's conformality tolerance
    :raise ConformalityError: if the defect is above tolerance
    """
    lam, defect = conformal_factor(im)
    if defect > im.conformal_tol:
        raise ConformalityError(f'Chart {im.source} is not conformal: defect {defect:.3e} > {im.conformal_tol:.1e}')
    return lam, defect
