"""
Jacobian systems of the mean curvature

    grad H - 3 pi_n(grad H) = grad A + perp_grad B (+ harmonic),  A = 0 on the circle

When H solves the equation the right hand sides are sums of jacobians
    lap A = sum_j *(d_j H ^ (perp_grad n)_j)
    lap B = -3 grad h . perp_grad n          (m = 3, h = H . n)
"""
from dataclasses import dataclass, field
from typing import Dict, Optional

import numpy as np

from willmore_lab.disk_field import PolarField, boundary_integral, boundary_trace, grad, integrate, laplacian, norm_l2, \
    perp_grad
from willmore_lab.disk_field.norms import gradient_energy
from willmore_lab.disk_field.operators import normal_derivative_trace, tangential_trace
from willmore_lab.exterior import embed_vectors, wedge_star
from willmore_lab.exterior.fields import embedding_matrix
from willmore_lab.solvers import GaussOperators, hodge_decompose
from willmore_lab.solvers.reports import _clean

INTERIOR = 0.5


@dataclass
class HodgeSystemReport:
    A: PolarField
    B: PolarField
    harmonic: PolarField
    roundtrip: float
    harmonic_defect: float
    orthogonality: Dict[str, float] = field(default_factory=dict)
    jacobian_defects: Dict[str, Optional[float]] = field(default_factory=dict)
    energy_identity: Dict[str, float] = field(default_factory=dict)
    boundary_checks: Dict[str, float] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            'roundtrip': _clean(self.roundtrip),
            'harmonic_defect': _clean(self.harmonic_defect),
            'harmonic_l2': _clean(norm_l2(self.harmonic)),
            'orthogonality': _clean(self.orthogonality),
            'jacobian_defects': _clean(self.jacobian_defects),
            'energy_identity': _clean(self.energy_identity),
            'boundary_checks': _clean(self.boundary_checks),
        }


def _relative(misfit: float, scale: float) -> float:
    return misfit / scale if scale > 0 else misfit


def normal_vector(n: PolarField) -> PolarField:
    """
    the unit normal of a hypersurface read off its grade one gauss blade
    """
    values = n.values @ embedding_matrix(3)
    boundary = None if n.boundary is None else n.boundary @ embedding_matrix(3)
    return PolarField(n.grid, values, boundary=boundary, name='normal')


def jacobian_rhs_A(n: PolarField, H: PolarField) -> PolarField:
    """
    sum_j *(d_j H ^ (perp_grad n)_j)
    """
    values = wedge_star(embed_vectors(grad(H).values), perp_grad(n).values)
    return PolarField(n.grid, np.sum(values, axis=2))


def jacobian_rhs_B(n: PolarField, H: PolarField) -> PolarField:
    """
    -3 sum_j d_j h (perp_grad nu)_j for a hypersurface, h = H . nu
    """
    nu = normal_vector(n)
    h = H.dot(nu)
    return PolarField(n.grid, -3 * np.sum(grad(h).values * perp_grad(nu).values, axis=2))


def _energy_identity(ops: GaussOperators, H: PolarField, A: PolarField, B: PolarField) -> Dict[str, float]:
    """
    int |grad A|^2 + |grad B|^2 against int 4 |pi_n grad H|^2 + |pi_T grad H|^2,
    which for m = 3 reads int 4 |grad h|^2 + |H|^2 |grad n|^2
    """
    gradient = grad(H).values
    normal_part = PolarField(ops.grid, ops.project(gradient, 0.0, 1.0))
    tangent_part = PolarField(ops.grid, ops.project(gradient, 1.0, 0.0))
    lhs = gradient_energy(A) + gradient_energy(B)
    rhs = 4 * norm_l2(normal_part) ** 2 + norm_l2(tangent_part) ** 2
    return {'lhs': lhs, 'rhs': rhs, 'relative_defect': _relative(abs(lhs - rhs), rhs)}


def _boundary_checks(n: PolarField, H: PolarField, A: PolarField, rhs_A: PolarField) -> Dict[str, float]:
    """
    int lap A = circle integral of dA/dnu, and int rhs_A = circle integral of *(H ^ d_tau n)
    """
    grid = n.grid
    interior = integrate(laplacian(A))
    flux = boundary_integral(grid, normal_derivative_trace(A))
    scale = max(np.linalg.norm(interior), norm_l2(grad(A)))

    jacobian_interior = integrate(rhs_A)
    d_tau_n = tangential_trace(grad(n))
    jacobian_flux = boundary_integral(grid, wedge_star(embed_vectors(boundary_trace(H)), d_tau_n))
    jacobian_scale = max(np.linalg.norm(jacobian_interior), norm_l2(rhs_A))
    return {
        'divergence_theorem_A': _relative(float(np.linalg.norm(interior - flux)), scale),
        'jacobian_boundary_term': _relative(float(np.linalg.norm(jacobian_interior - jacobian_flux)), jacobian_scale),
    }


def hodge_system_fields(geom, ops: GaussOperators = None) -> HodgeSystemReport:
    """
    hodge decomposition of grad H - 3 pi_n(grad H), A dirichlet and B neumann
    the jacobian defects are |lap A - rhs_A| and |lap B - rhs_B| on D_(1/2), relative to the rhs,
    the first one vanishes only when H solves the equation, the second holds for every hypersurface
    :param geom: anything carrying n (gauss blade field) and H (mean curvature vector field)
    :param ops: operators of geom.n, reused when given
    :return: HodgeSystemReport
    :raise SolverError: if a poisson solve fails
    """
    n, H = geom.n, geom.H
    ops = GaussOperators(n) if ops is None else ops
    X = PolarField(n.grid, ops.project(grad(H).values, 1.0, -2.0), name='X')
    decomposition = hodge_decompose(X, d_bc='neumann')
    A, B = decomposition.C, decomposition.D

    rhs_A = jacobian_rhs_A(n, H)
    defects = {'A': _relative(norm_l2(laplacian(A) - rhs_A, INTERIOR), norm_l2(rhs_A, INTERIOR)), 'B': None}
    if ops.m == 3:
        rhs_B = jacobian_rhs_B(n, H)
        defects['B'] = _relative(norm_l2(laplacian(B) - rhs_B, INTERIOR), norm_l2(rhs_B, INTERIOR))

    return HodgeSystemReport(
        A=A,
        B=B,
        harmonic=decomposition.harmonic,
        roundtrip=decomposition.roundtrip,
        harmonic_defect=decomposition.harmonic_defect,
        orthogonality=decomposition.orthogonality,
        jacobian_defects=defects,
        energy_identity=_energy_identity(ops, H, A, B),
        boundary_checks=_boundary_checks(n, H, A, rhs_A),
    )
