from dataclasses import dataclass, field
from typing import Dict

import numpy as np

from willmore_lab.disk_field import PolarField, curl, div, grad, norm_l2, perp_grad
from willmore_lab.disk_field.operators import flux_trace, inner, tangential_trace
from willmore_lab.solvers.poisson import poisson


@dataclass
class HodgeDecomposition:
    """
    X = grad C + perp_grad D + harmonic, C = 0 on the circle, harmonic = grad psi with psi harmonic
    """
    C: PolarField
    D: PolarField
    harmonic: PolarField
    roundtrip: float
    harmonic_defect: float
    orthogonality: Dict[str, float] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {'roundtrip': self.roundtrip, 'harmonic_defect': self.harmonic_defect,
                'harmonic_l2': norm_l2(self.harmonic), 'orthogonality': dict(self.orthogonality)}


def hodge_decompose(X: PolarField, d_bc: str = 'neumann') -> HodgeDecomposition:
    """
    hodge decomposition of a field of gradient pairs with values in R^m
    C solves laplacian C = div X with C = 0 on the circle. D solves laplacian D = curl X, with
    d_bc='neumann' the flux data dD/dnu = X . tau leaves no harmonic part,
    with d_bc='dirichlet' D = 0 on the circle and the harmonic part is orthogonal to both.
    The harmonic part is solved for on its own, grad psi with laplacian psi = 0 and the normal flux of
    X - grad C - perp_grad D, so the roundtrip |X - grad C - perp_grad D - grad psi| / |X| measures the solves.
    :param X: field of cshape (2, *c)
    :param d_bc: boundary condition of D
    :return: HodgeDecomposition, harmonic_defect is |div r| + |curl r| of the remainder r = X - grad C - perp_grad D
        and orthogonality entries are |<a, b>| / |X|^2
    """
    if d_bc not in ('neumann', 'dirichlet'):
        raise ValueError(f'Invalid d_bc: {d_bc}')
    C = poisson(div(X), 'dirichlet', name='C')
    if d_bc == 'neumann':
        D = poisson(curl(X), 'neumann', data=tangential_trace(X), name='D')
    else:
        D = poisson(curl(X), 'dirichlet', name='D')

    grad_c = grad(C)
    perp_d = perp_grad(D)
    remainder = X - grad_c - perp_d
    source = PolarField.zeros(X.grid, X.cshape[1:])
    psi = poisson(source, 'neumann', data=flux_trace(remainder), name='psi')
    harmonic = grad(psi)

    scale = max(norm_l2(X), np.finfo(float).tiny)
    roundtrip = norm_l2(remainder - harmonic) / scale
    harmonic_defect = (norm_l2(div(remainder)) + norm_l2(curl(remainder))) / scale
    orthogonality = {
        'grad_C.perp_grad_D': abs(inner(grad_c, perp_d)) / scale ** 2,
        'grad_C.harmonic': abs(inner(grad_c, harmonic)) / scale ** 2,
        'perp_grad_D.harmonic': abs(inner(perp_d, harmonic)) / scale ** 2,
    }
    return HodgeDecomposition(C, D, harmonic, roundtrip, harmonic_defect, orthogonality)
