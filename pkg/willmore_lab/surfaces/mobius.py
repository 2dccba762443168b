"""
Mobius transformations of R^m acting on sampled surfaces

A composition applies its parts right to left, compose(a, b)(x) = a(b(x)).
"""
import logging
from dataclasses import dataclass, field
from typing import List, Optional, Union

import numpy as np

from willmore_lab import settings
from willmore_lab.disk_field import PolarField
from willmore_lab.geometry import Immersion, require_conformal
from willmore_lab.surfaces.parametric import PeriodicImmersion

logger = logging.getLogger('willmore_lab')

KINDS = ('inversion', 'translation', 'dilation', 'rotation', 'composition')


@dataclass
class MobiusMap:
    """
    inversion: center c and radius rho, x -> c + rho^2 (x - c) / |x - c|^2
    translation: vector v, dilation: factor s about the origin, rotation: orthogonal matrix Q
    """
    kind: str
    center: Optional[np.array] = None
    radius: float = 1.0
    vector: Optional[np.array] = None
    factor: float = 1.0
    matrix: Optional[np.array] = None
    parts: List['MobiusMap'] = field(default_factory=list)

    def __post_init__(self):
        self._validate_inputs()

    def _validate_inputs(self) -> None:
        """
        Ensures the inputs are valid
        :raise ValueError: if inputs are invalid
        """
        if self.kind not in KINDS:
            raise ValueError(f'Invalid mobius kind: {self.kind}, expected one of {KINDS}')
        if self.kind == 'inversion' and (self.center is None or self.radius <= 0):
            raise ValueError(f'Invalid inversion: center {self.center}, radius {self.radius}')
        if self.kind == 'translation' and self.vector is None:
            raise ValueError('Invalid translation: no vector')
        if self.kind == 'dilation' and self.factor <= 0:
            raise ValueError(f'Invalid dilation factor: {self.factor}')
        if self.kind == 'rotation':
            Q = np.asarray(self.matrix, dtype=float)
            if Q.ndim != 2 or Q.shape[0] != Q.shape[1] or not np.allclose(Q.T @ Q, np.eye(Q.shape[0]), atol=1e-12):
                raise ValueError('Invalid rotation: matrix is not orthogonal')

    def __call__(self, points: np.array) -> np.array:
        """
        :param points: array (..., m)
        """
        points = np.asarray(points, dtype=float)
        if self.kind == 'inversion':
            offset = points - self.center
            return self.center + self.radius ** 2 * offset / np.sum(offset ** 2, axis=-1, keepdims=True)
        if self.kind == 'translation':
            return points + self.vector
        if self.kind == 'dilation':
            return self.factor * points
        if self.kind == 'rotation':
            return points @ np.asarray(self.matrix).T
        for part in reversed(self.parts):
            points = part(points)
        return points

    def steps(self) -> List['MobiusMap']:
        """
        elementary maps in the order they are applied
        """
        if self.kind != 'composition':
            return [self]
        return [step for part in reversed(self.parts) for step in part.steps()]

    def describe(self) -> dict:
        if self.kind == 'composition':
            return {'kind': self.kind, 'parts': [p.describe() for p in self.parts]}
        out = {'kind': self.kind}
        if self.kind == 'inversion':
            out.update(center=np.asarray(self.center).tolist(), radius=self.radius)
        elif self.kind == 'translation':
            out['vector'] = np.asarray(self.vector).tolist()
        elif self.kind == 'dilation':
            out['factor'] = self.factor
        else:
            out['matrix'] = np.asarray(self.matrix).tolist()
        return out


def inversion(center, radius: float = 1.0) -> MobiusMap:
    return MobiusMap('inversion', center=np.asarray(center, dtype=float), radius=radius)


def translation(vector) -> MobiusMap:
    return MobiusMap('translation', vector=np.asarray(vector, dtype=float))


def dilation(factor: float) -> MobiusMap:
    return MobiusMap('dilation', factor=factor)


def rotation(matrix) -> MobiusMap:
    return MobiusMap('rotation', matrix=np.asarray(matrix, dtype=float))


def compose(*maps: MobiusMap) -> MobiusMap:
    return MobiusMap('composition', parts=list(maps))


#
# Admissibility
#
def clearance(points: np.array, T: MobiusMap) -> float:
    """
    smallest distance between an inversion center and the image of the points under the steps before it,
    relative to the diameter of that image, inf when T has no inversion
    """
    points = np.asarray(points, dtype=float).reshape(-1, points.shape[-1])
    smallest = np.inf
    for step in T.steps():
        if step.kind == 'inversion':
            diameter = max(float(np.max(np.ptp(points, axis=0))), np.finfo(float).tiny)
            distance = float(np.min(np.linalg.norm(points - step.center, axis=-1)))
            smallest = min(smallest, distance / diameter)
        points = step(points)
    return smallest


def random_mobius(rng: np.random.Generator, points: np.array, min_clearance: float = settings.MOBIUS_CLEARANCE,
                  max_tries: int = 100) -> MobiusMap:
    """
    rotation o dilation o translation o inversion with the inversion center at least min_clearance diameters
    away from the points
    """
    points = np.asarray(points, dtype=float).reshape(-1, np.shape(points)[-1])
    m = points.shape[-1]
    centroid = points.mean(axis=0)
    diameter = float(np.max(np.ptp(points, axis=0)))
    for _ in range(max_tries):
        direction = rng.standard_normal(m)
        direction /= np.linalg.norm(direction)
        center = centroid + direction * diameter * rng.uniform(1.0, 3.0)
        Q, R = np.linalg.qr(rng.standard_normal((m, m)))
        Q = Q * np.sign(np.diag(R))
        T = compose(rotation(Q), dilation(float(rng.uniform(0.5, 2.0))), translation(rng.standard_normal(m)),
                    inversion(center, float(diameter * rng.uniform(0.5, 2.0))))
        if clearance(points, T) >= min_clearance:
            return T
    raise ValueError(f'Could not draw an admissible mobius map with clearance {min_clearance} in {max_tries} tries')


def apply_mobius(target: Union[Immersion, PeriodicImmersion], T: MobiusMap,
                 min_clearance: float = settings.MOBIUS_CLEARANCE) -> Union[Immersion, PeriodicImmersion]:
    """
    T o Phi, disk charts are checked for conformality again
    :raise ValueError: if an inversion center is too close to the surface
    :raise ConformalityError: if the transformed chart is not conformal
    """
    values = target.values if isinstance(target, PeriodicImmersion) else target.phi.values
    distance = clearance(values, T)
    if distance < min_clearance:
        raise ValueError(f'Invalid mobius map for {target.source}: inversion center at {distance:.3e} diameters, '
                         f'below the clearance {min_clearance}')
    source = f'{target.source}|mobius'
    if isinstance(target, PeriodicImmersion):
        return target.copy(values=T(values), source=source)

    phi = target.phi
    boundary = None if phi.boundary is None else T(phi.boundary)
    image = Immersion(PolarField(phi.grid, T(phi.values), boundary=boundary, name='phi'), source=source,
                      conformal_tol=target.conformal_tol)
    _, defect = require_conformal(image)
    logger.debug('mobius image of %s, conformal defect %.3e', target.source, defect)
    return image
