import numpy as np

from willmore_lab.disk_field import PolarField, grad, integrate, lorentz_norm, norm_l2, perp_grad
from willmore_lab.solvers.poisson import poisson
from willmore_lab.solvers.reports import SolveReport


def jacobian(a: PolarField, b: PolarField) -> PolarField:
    """
    grad a . perp_grad b = d2 a d1 b - d1 a d2 b
    """
    return PolarField(a.grid, np.sum(grad(a).values * perp_grad(b).values, axis=2))


def wente_solve(a: PolarField, b: PolarField, bc: str = 'dirichlet') -> SolveReport:
    """
    solves laplacian(phi) = grad a . perp_grad b and measures the wente ratio
    ratio = |grad phi|_2 / (|grad a|_(2,inf) |grad b|_2), None when the denominator vanishes
    with bc='neumann' the flux is the uniform value int f / 2 pi, the only constant flux compatible with the source
    :param a: scalar field
    :param b: scalar field
    :param bc: 'dirichlet' (phi = 0 on the circle) or 'neumann'
    :return: SolveReport with the measured ratio and the norms that enter it in extras
    """
    if not (a.is_scalar and b.is_scalar):
        raise ValueError(f'Invalid wente data: expected scalar fields, got {a.cshape} and {b.cshape}')
    rhs = jacobian(a, b)
    if bc == 'neumann':
        phi = poisson(rhs, 'neumann', data=integrate(rhs) / (2 * np.pi), name='phi')
    else:
        phi = poisson(rhs, bc, name='phi')

    grad_phi = norm_l2(grad(phi))
    grad_a = lorentz_norm(grad(a), '2,inf').value
    grad_b = norm_l2(grad(b))
    denominator = grad_a * grad_b
    ratio = grad_phi / denominator if denominator > 0 else None
    return SolveReport(
        solution=phi,
        estimate_ratio=ratio,
        scheme=f'wente_{bc}',
        extras={'grad_phi_l2': grad_phi, 'grad_a_l2inf': grad_a, 'grad_b_l2': grad_b,
                'jacobian_integral': integrate(rhs)},
    )
