"""
Catalog of analytic surfaces

Every entry has a conformal chart of the unit disk and, where known, closed form reference fields
(lambda, H) sampled next to the immersion. Closed surfaces also carry a periodic parametrization on a flat
torus used for the energy. Ids are strings such as 'sphere_stereo(R=2)', 'torus_rev(2)', 'graph(0.1, 0.02)'.
"""
import math
import re
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.integrate import solve_ivp

from willmore_lab.disk_field import PeriodicGrid, PolarField, PolarGrid
from willmore_lab.geometry import GaussPair, Immersion
from willmore_lab.solvers.sampling import constant_gauss_map
from willmore_lab.surfaces.parametric import PeriodicImmersion

SURFACE_IDS = ('flat', 'sphere_stereo', 'cap', 'catenoid', 'enneper', 'torus_rev', 'clifford_torus', 'graph',
               'log_singular')


@dataclass
class CatalogSurface:
    """
    chart(x1, x2) returns the m coordinates of the disk chart, periodic(u, v) those of the closed surface
    reference maps a field name to a function of (x1, x2) sampled alongside the chart
    """
    id: str
    m: int
    chart: Optional[Callable] = None
    reference: Dict[str, Callable] = field(default_factory=dict)
    params: Dict[str, object] = field(default_factory=dict)
    periodic: Optional[Callable] = None
    periods: Tuple[float, float] = (2 * math.pi, 2 * math.pi)
    willmore: Optional[bool] = None
    energy: Optional[float] = None
    patch_energy: Optional[float] = None
    synthetic: bool = False

    @property
    def domain(self) -> str:
        return 'periodic' if self.periodic is not None else 'disk'

    @property
    def label(self) -> str:
        if not self.params:
            return self.id
        return f'{self.id}({", ".join(f"{k}={v}" for k, v in self.params.items())})'


#
# Entries
#
def flat(m: int = 3) -> CatalogSurface:
    def chart(x1, x2):
        return [x1, x2] + [np.zeros_like(x1)] * (m - 2)

    return CatalogSurface('flat', m, chart, reference={'lambda': lambda x1, x2: np.zeros_like(x1),
                                                       'H': lambda x1, x2: [np.zeros_like(x1)] * m},
                          params={'m': m}, willmore=True, patch_energy=0.0)


def _stereographic(R: float, rho: float):
    """
    x -> R (2 y, |y|^2 - 1) / (1 + |y|^2) with y = rho x, H = -Phi / R^2 for the sphere centered at 0
    """
    def chart(x1, x2):
        y1, y2 = rho * x1, rho * x2
        q = 1 + y1 ** 2 + y2 ** 2
        return [2 * R * y1 / q, 2 * R * y2 / q, R * (y1 ** 2 + y2 ** 2 - 1) / q]

    def lam(x1, x2):
        return np.log(2 * R * rho / (1 + rho ** 2 * (x1 ** 2 + x2 ** 2)))

    def H(x1, x2):
        return [-c / R ** 2 for c in chart(x1, x2)]

    return chart, {'lambda': lam, 'H': H}


def sphere_stereo(R: float = 1.0) -> CatalogSurface:
    """
    lower hemisphere of the sphere of radius R, the closed sphere takes two antipodal charts
    """
    if R <= 0:
        raise ValueError(f'Invalid sphere radius: {R}')
    chart, reference = _stereographic(R, 1.0)
    return CatalogSurface('sphere_stereo', 3, chart, reference, params={'R': R}, willmore=True,
                          energy=4 * math.pi, patch_energy=2 * math.pi)


def cap(rho: float = 1.0, R: float = 1.0) -> CatalogSurface:
    """
    stereographic image of D_rho rescaled to the unit disk, energy 4 pi rho^2 / (1 + rho^2)
    """
    if rho <= 0:
        raise ValueError(f'Invalid cap parameter: {rho}')
    chart, reference = _stereographic(R, rho)
    return CatalogSurface('cap', 3, chart, reference, params={'rho': rho, 'R': R}, willmore=True,
                          patch_energy=4 * math.pi * rho ** 2 / (1 + rho ** 2))


def catenoid(scale: float = 1.0) -> CatalogSurface:
    """
    scale (cosh x1 cos x2, cosh x1 sin x2, x1), e^lambda = scale cosh x1
    """
    def chart(x1, x2):
        return [scale * np.cosh(x1) * np.cos(x2), scale * np.cosh(x1) * np.sin(x2), scale * x1]

    return CatalogSurface('catenoid', 3, chart,
                          reference={'lambda': lambda x1, x2: np.log(scale * np.cosh(x1)),
                                     'H': lambda x1, x2: [np.zeros_like(x1)] * 3},
                          params={'scale': scale}, willmore=True)


def enneper(scale: float = 0.5) -> CatalogSurface:
    """
    enneper surface on the disk of radius scale, e^lambda = scale (1 + |y|^2)
    """
    def chart(x1, x2):
        u, v = scale * x1, scale * x2
        return [u - u ** 3 / 3 + u * v ** 2, v - v ** 3 / 3 + v * u ** 2, u ** 2 - v ** 2]

    def lam(x1, x2):
        return np.log(scale * (1 + scale ** 2 * (x1 ** 2 + x2 ** 2)))

    return CatalogSurface('enneper', 3, chart, reference={'lambda': lam, 'H': lambda x1, x2: [np.zeros_like(x1)] * 3},
                          params={'scale': scale}, willmore=True)


def torus_energy(t: float) -> float:
    """
    pi^2 t^2 / sqrt(t^2 - 1) for the torus of revolution with radius ratio t
    """
    return math.pi ** 2 * t ** 2 / math.sqrt(t ** 2 - 1)


def torus_rev(t: float = 2.0) -> CatalogSurface:
    """
    torus of revolution with tube radius 1 and center radius t
    the disk chart is conformal and centered on the inner equator: with psi the tube angle measured from the inner
    equator, du = d psi / (t - cos psi), e^lambda = t - cos psi
    the closed surface uses the plain (phi, theta) parametrization
    """
    if t <= 1:
        raise ValueError(f'Invalid torus ratio: {t}, must be > 1')
    omega = math.sqrt(t ** 2 - 1)
    k = math.sqrt((t - 1) / (t + 1))
    if omega / 2 >= math.pi / 2:
        raise ValueError(f'Invalid torus ratio: {t}, the conformal chart does not fit the unit disk')

    def tube_angle(x1):
        return 2 * np.arctan(k * np.tan(omega * x1 / 2))

    def chart(x1, x2):
        psi = tube_angle(x1)
        radius = t - np.cos(psi)
        return [radius * np.cos(x2), radius * np.sin(x2), -np.sin(psi)]

    def lam(x1, x2):
        return np.log(t - np.cos(tube_angle(x1)))

    def H(x1, x2):
        # outward normal at phi = pi + psi, |H| = (t + 2 cos phi) / (2 (t + cos phi))
        psi = tube_angle(x1)
        cos_phi, sin_phi = -np.cos(psi), -np.sin(psi)
        size = -(t + 2 * cos_phi) / (2 * (t + cos_phi))
        return [size * cos_phi * np.cos(x2), size * cos_phi * np.sin(x2), size * sin_phi]

    def periodic(u, v):
        radius = t + np.cos(u)
        return [radius * np.cos(v), radius * np.sin(v), np.sin(u)]

    return CatalogSurface('torus_rev', 3, chart, {'lambda': lam, 'H': H}, params={'t': t}, periodic=periodic,
                          willmore=math.isclose(t, math.sqrt(2)), energy=torus_energy(t))


def clifford_torus(r: float = 1.0) -> CatalogSurface:
    """
    flat torus r (cos u, sin u, cos v, sin v) in R^4, |H| = 1 / (sqrt(2) r), W = 2 pi^2
    """
    def chart(x1, x2):
        return [r * np.cos(x1), r * np.sin(x1), r * np.cos(x2), r * np.sin(x2)]

    def H(x1, x2):
        return [-c / (2 * r ** 2) for c in chart(x1, x2)]

    return CatalogSurface('clifford_torus', 4, chart,
                          reference={'lambda': lambda x1, x2: np.full_like(x1, math.log(r)), 'H': H},
                          params={'r': r}, periodic=chart, willmore=True, energy=2 * math.pi ** 2)


def _radial_profile(coeffs: Sequence[float]) -> Callable:
    """
    q(r) with rho = r q(r) the conformal radius of the graph z = f(rho), q(0) = 1
    conformality of (rho cos, rho sin, f(rho)) in polar coordinates reads r rho' = rho / sqrt(1 + f'(rho)^2)
    """
    def slope(rho):
        return sum(2 * (k + 1) * c * rho ** (2 * k + 1) for k, c in enumerate(coeffs))

    def rhs(r, q):
        if r == 0:
            return [0.0]
        return [q[0] * (1 / math.sqrt(1 + slope(r * q[0]) ** 2) - 1) / r]

    solution = solve_ivp(rhs, (0.0, 1.0), [1.0], method='DOP853', rtol=1e-13, atol=1e-15, dense_output=True)
    if not solution.success:
        raise ValueError(f'Invalid graph coefficients {list(coeffs)}: {solution.message}')
    return lambda r: solution.sol(np.ravel(r))[0].reshape(np.shape(r))


def graph(coeffs: Sequence[float] = (0.1,)) -> CatalogSurface:
    """
    radial graph z = f(rho) = sum_k c_k rho^(2k+2) in its conformal chart, e^lambda = q(|x|)
    """
    coeffs = [float(c) for c in coeffs]
    q = _radial_profile(coeffs)

    def profile(rho, derivative=0):
        if derivative == 0:
            return sum(c * rho ** (2 * k + 2) for k, c in enumerate(coeffs))
        if derivative == 1:
            return sum((2 * k + 2) * c * rho ** (2 * k + 1) for k, c in enumerate(coeffs))
        return sum((2 * k + 2) * (2 * k + 1) * c * rho ** (2 * k) for k, c in enumerate(coeffs))

    def chart(x1, x2):
        factor = q(np.hypot(x1, x2))
        rho = np.hypot(x1, x2) * factor
        return [factor * x1, factor * x2, profile(rho)]

    def H(x1, x2):
        r = np.hypot(x1, x2)
        rho = r * q(r)
        d1, d2 = profile(rho, 1), profile(rho, 2)
        root = np.sqrt(1 + d1 ** 2)
        mean = 0.5 * (d2 / root ** 3 + d1 / (rho * root))
        return [-mean * d1 * x1 / (r * root), -mean * d1 * x2 / (r * root), mean / root]

    willmore = all(c == 0 for c in coeffs)
    return CatalogSurface('graph', 3, chart, reference={'lambda': lambda x1, x2: np.log(q(np.hypot(x1, x2))), 'H': H},
                          params={'coeffs': coeffs}, willmore=willmore or None)


def log_singular(H0: Sequence[float] = (0.0, 0.0, 1.0)) -> CatalogSurface:
    """
    synthetic pair n = E3 ^ ... ^ Em, H = H0 log|x|, not an immersion
    L_n H = (2 pi H0 - 6 pi pi_n(H0)) delta_0
    """
    H0 = np.asarray(H0, dtype=float)

    def H(x1, x2):
        return [c * np.log(np.hypot(x1, x2)) for c in H0]

    return CatalogSurface('log_singular', H0.shape[0], reference={'H': H}, params={'H0': H0.tolist()},
                          synthetic=True)


def expected_residue(H0: Sequence[float]) -> np.array:
    """
    c0 of the log_singular pair
    """
    H0 = np.asarray(H0, dtype=float)
    normal = np.zeros_like(H0)
    normal[2:] = H0[2:]
    return 2 * np.pi * H0 - 6 * np.pi * normal


CATALOG = {
    'flat': flat,
    'sphere_stereo': sphere_stereo,
    'cap': cap,
    'catenoid': catenoid,
    'enneper': enneper,
    'torus_rev': torus_rev,
    'clifford_torus': clifford_torus,
    'graph': graph,
    'log_singular': log_singular,
}
SEQUENCE_PARAMS = {'graph': 'coeffs', 'log_singular': 'H0'}


def parse_surface_id(text: str) -> Tuple[str, List[float], Dict[str, float]]:
    """
    'torus_rev(t=2)' -> ('torus_rev', [], {'t': 2.0}), 'graph(0.1, 0.02)' -> ('graph', [0.1, 0.02], {})
    """
    match = re.fullmatch(r'\s*([a-z_]+)\s*(?:\((.*)\))?\s*', text)
    if match is None or match.group(1) not in CATALOG:
        raise ValueError(f'Invalid surface id: {text!r}, expected one of {SURFACE_IDS}')
    name, inner = match.group(1), match.group(2)
    args, kwargs = [], {}
    for part in filter(None, (p.strip() for p in (inner or '').split(','))):
        try:
            if '=' in part:
                key, value = part.split('=', 1)
                kwargs[key.strip()] = float(eval_number(value))
            else:
                args.append(float(eval_number(part)))
        except ValueError:
            raise ValueError(f'Invalid surface parameter {part!r} in {text!r}')
    return name, args, kwargs


def eval_number(text: str) -> float:
    """
    a float or sqrt(x)
    """
    text = text.strip()
    root = re.fullmatch(r'sqrt\((.+)\)', text)
    if root:
        return math.sqrt(float(root.group(1)))
    return float(text)


def get_surface(surface: Union[str, CatalogSurface], **params) -> CatalogSurface:
    """
    catalog entry from an id string or an entry, keyword params override those of the id
    """
    if isinstance(surface, CatalogSurface):
        return surface
    name, args, kwargs = parse_surface_id(surface)
    kwargs.update(params)
    factory = CATALOG[name]
    if name in SEQUENCE_PARAMS:
        key = SEQUENCE_PARAMS[name]
        if args:
            kwargs[key] = args
        return factory(**kwargs)
    if name == 'flat':
        args = [int(a) for a in args]
        kwargs = {k: int(v) for k, v in kwargs.items()}
    return factory(*args, **kwargs)


def sample(surface: Union[str, CatalogSurface], grid: Union[PolarGrid, PeriodicGrid], **params):
    """
    samples a catalog entry
    :param surface: id string or entry
    :param grid: PolarGrid for the disk chart, PeriodicGrid for the closed surface
    :return: Immersion with the reference fields attached, PeriodicImmersion, or GaussPair for synthetic entries
    """
    entry = get_surface(surface, **params)
    if isinstance(grid, PeriodicGrid):
        if entry.periodic is None:
            raise ValueError(f'Invalid grid for {entry.label}: the surface has no periodic parametrization')
        values = np.stack(entry.periodic(grid.u, grid.v), axis=-1)
        return PeriodicImmersion(grid, values, source=entry.label)

    reference = {name: PolarField.from_function(grid, func, name=name) for name, func in entry.reference.items()}
    if entry.synthetic:
        H = PolarField.from_function(grid, entry.reference['H'], boundary=True, name='H')
        return GaussPair(constant_gauss_map(grid, entry.m), H, source=entry.label)
    phi = PolarField.from_function(grid, entry.chart, boundary=True, name='phi')
    return Immersion(phi, source=entry.label, reference=reference)
