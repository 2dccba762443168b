"""
Seeded random smooth fields for the probes and the monte carlo checks

Every generator takes a numpy Generator built by make_rng, so identical seeds give identical fields.
"""
from typing import Callable

import numpy as np

from willmore_lab.disk_field import PolarField, PolarGrid
from willmore_lab.exterior import embed_vectors, wedge_arrays


def make_rng(seed: int) -> np.random.Generator:
    """
    counter based philox generator
    """
    return np.random.Generator(np.random.Philox(int(seed)))


def random_polynomial(rng: np.random.Generator, degree: int = 3, scale: float = 1.0) -> Callable:
    """
    p(x1, x2) = sum c_ij x1^i x2^j over i + j <= degree, c_ij normal with variance decaying in the degree
    """
    powers = [(i, j) for i in range(degree + 1) for j in range(degree + 1 - i)]
    coefficients = rng.standard_normal(len(powers)) * scale / np.array([1.0 + i + j for i, j in powers])

    def polynomial(x1, x2):
        return sum(c * x1 ** i * x2 ** j for c, (i, j) in zip(coefficients, powers))

    return polynomial


def random_scalar_field(grid: PolarGrid, rng: np.random.Generator, degree: int = 3, compact: bool = False,
                        scale: float = 1.0) -> PolarField:
    """
    random polynomial field, multiplied by (1 - r^2)^2 when compact so it vanishes to first order on the circle
    """
    p = random_polynomial(rng, degree, scale)

    def func(x1, x2):
        bump = (1 - x1 ** 2 - x2 ** 2) ** 2 if compact else 1.0
        return p(x1, x2) * bump

    return PolarField.from_function(grid, func, boundary=True)


def random_vector_field(grid: PolarGrid, rng: np.random.Generator, m: int, degree: int = 3, compact: bool = False,
                        scale: float = 1.0) -> PolarField:
    """
    R^m valued field with independent random polynomial components
    """
    parts = [random_polynomial(rng, degree, scale) for _ in range(m)]

    def func(x1, x2):
        bump = (1 - x1 ** 2 - x2 ** 2) ** 2 if compact else 1.0
        return [p(x1, x2) * bump for p in parts]

    return PolarField.from_function(grid, func, boundary=True)


def gauss_map_from_normals(normals: np.array) -> np.array:
    """
    blade array n_1 ^ ... ^ n_k from an array (..., k, m) of orthonormal normals
    """
    blade = embed_vectors(normals[..., 0, :])
    for alpha in range(1, normals.shape[-2]):
        blade = wedge_arrays(blade, embed_vectors(normals[..., alpha, :]))
    return blade


def tilted_normals(x1: np.array, x2: np.array, tilts: list, m: int) -> np.array:
    """
    orthonormal normals obtained by gram schmidt from E_(3+a) + sum_i t_ai(x) E_i
    :param tilts: for each normal a pair of callables (t_a1, t_a2)
    :return: array (..., m-2, m)
    """
    found = []
    for alpha, (t1, t2) in enumerate(tilts):
        v = np.zeros(np.shape(x1) + (m,))
        v[..., 0] = t1(x1, x2)
        v[..., 1] = t2(x1, x2)
        v[..., 2 + alpha] = 1.0
        for previous in found:
            v = v - np.sum(v * previous, axis=-1, keepdims=True) * previous
        found.append(v / np.linalg.norm(v, axis=-1, keepdims=True))
    return np.stack(found, axis=-2)


def random_gauss_map(grid: PolarGrid, rng: np.random.Generator, m: int = 3, amplitude: float = 0.1,
                     degree: int = 2) -> PolarField:
    """
    random smooth gauss map close to the constant E_3 ^ ... ^ E_m
    the normals tilt towards the E_1, E_2 plane by random polynomials scaled by amplitude,
    so int |grad n|^2 is of order amplitude^2
    :return: blade field of cshape (2^m,) with boundary values
    """
    if m < 3:
        raise ValueError(f'Invalid ambient dimension: {m}')
    tilts = [(random_polynomial(rng, degree, amplitude), random_polynomial(rng, degree, amplitude))
             for _ in range(m - 2)]

    def func(x1, x2):
        blade = gauss_map_from_normals(tilted_normals(x1, x2, tilts, m))
        return [blade[..., i] for i in range(blade.shape[-1])]

    return PolarField.from_function(grid, func, boundary=True, name='n')


def constant_gauss_map(grid: PolarGrid, m: int = 3) -> PolarField:
    """
    E_3 ^ ... ^ E_m everywhere
    """
    normals = np.eye(m)[2:]
    return PolarField.constant(grid, gauss_map_from_normals(normals))
