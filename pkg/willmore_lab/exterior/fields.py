"""
Vectorized exterior algebra over node arrays

Blade arrays carry the 2^m bitmask components on their last axis, vector arrays carry m components.
The sign conventions are those of willmore_lab.exterior.multivector.
"""
from functools import lru_cache

import numpy as np

from willmore_lab.exterior.multivector import blade_grades, canonical_reordering_sign, normal_projection_sign


def ambient_dimension(blade_size: int) -> int:
    m = int(round(np.log2(blade_size)))
    if 1 << m != blade_size:
        raise ValueError(f'Invalid blade component count: {blade_size}')
    return m


@lru_cache(maxsize=None)
def wedge_table(m: int) -> np.array:
    size = 1 << m
    table = np.zeros((size, size, size))
    for a in range(size):
        for b in range(size):
            if not a & b:
                table[a, b, a | b] = canonical_reordering_sign(a, b)
    return table


@lru_cache(maxsize=None)
def left_contraction_table(m: int) -> np.array:
    size = 1 << m
    table = np.zeros((size, size, size))
    for a in range(size):
        for b in range(size):
            if a & b == a:
                table[a, b, a ^ b] = canonical_reordering_sign(a, b)
    return table


@lru_cache(maxsize=None)
def star_matrix(m: int) -> np.array:
    """
    (m, 2^m) matrix taking the grade m-1 components of a blade array to the identified vector
    """
    size = 1 << m
    full = size - 1
    matrix = np.zeros((m, size))
    for i in range(m):
        complement = full ^ (1 << i)
        matrix[i, complement] = canonical_reordering_sign(1 << i, complement)
    return matrix


@lru_cache(maxsize=None)
def embedding_matrix(m: int) -> np.array:
    """
    (2^m, m) matrix placing vector components on the grade 1 blades
    """
    matrix = np.zeros((1 << m, m))
    for i in range(m):
        matrix[1 << i, i] = 1.0
    return matrix


@lru_cache(maxsize=None)
def wedge_star_table(m: int) -> np.array:
    """
    T[a, b, k] = k-th component of *(e_a ^ e_b), only nonzero when the grades add up to m-1
    """
    table = np.einsum('abc,kc->abk', wedge_table(m), star_matrix(m))
    grades = blade_grades(m)
    keep = (grades[:, None] + grades[None, :]) == m - 1
    return table * keep[:, :, None]


def embed_vectors(v: np.array) -> np.array:
    """
    vector array (..., m) to blade array (..., 2^m)
    """
    return v @ embedding_matrix(v.shape[-1]).T


def wedge_arrays(a: np.array, b: np.array) -> np.array:
    m = ambient_dimension(a.shape[-1])
    return np.einsum('...i,...j,ijk->...k', a, b, wedge_table(m), optimize=True)


def star_arrays(a: np.array) -> np.array:
    """
    blade array of grade m-1 to its identified vector array
    """
    m = ambient_dimension(a.shape[-1])
    return a @ star_matrix(m).T


def wedge_star(a: np.array, b: np.array) -> np.array:
    """
    *(a ^ b) for blade arrays whose wedge has grade m-1
    :param a: blade array (..., 2^m)
    :param b: blade array (..., 2^m), broadcast against a
    :return: vector array (..., m)
    """
    m = ambient_dimension(a.shape[-1])
    return np.einsum('...i,...j,ijk->...k', a, b, wedge_star_table(m), optimize=True)


def vector_wedge_star(v: np.array, n: np.array) -> np.array:
    """
    *(v ^ n) for a vector array v (..., m) and an (m-2)-blade array n (..., 2^m)
    """
    return wedge_star(embed_vectors(v), n)


def normal_projectors(n: np.array) -> np.array:
    """
    pointwise matrix of pi_n for a unit (m-2)-blade array
    P[..., i, j] = i-th component of pi_n(e_j) = sign * contract(contract(e_j, n), n)
    :param n: blade array (..., 2^m)
    :return: array (..., m, m)
    """
    m = ambient_dimension(n.shape[-1])
    table = left_contraction_table(m)
    embed = embedding_matrix(m)
    # contract(e_j, n) then contract the result into n, keep the grade 1 part
    first = np.einsum('aj,abc,...b->...jc', embed, table, n, optimize=True)
    second = np.einsum('...jc,cbd,...b->...jd', first, table, n, optimize=True)
    projected = second @ embed
    return normal_projection_sign(m) * np.swapaxes(projected, -1, -2)


def apply_projector(P: np.array, X: np.array) -> np.array:
    """
    applies a pointwise (m, m) matrix field to the last axis of a node array
    :param P: array (n_r, n_theta, m, m)
    :param X: array (n_r, n_theta, ..., m)
    """
    return np.einsum('rtij,rt...j->rt...i', P, X)
