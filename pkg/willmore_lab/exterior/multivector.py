"""
Minimal exterior algebra of R^m

Basis blades are indexed by bitmasks: bit i-1 set means e_i is a factor, factors in increasing order.
Sign conventions (all fixed by the anchor n ^ e1 = (-1)^(m-1) e2 for an oriented frame (e1, e2, n1, ..., n_(m-2))):

    wedge       e_A ^ e_B = s(A, B) e_(A|B) when A & B = 0, zero otherwise
    contract    grade(a) <= grade(b): left contraction, e_A _| e_B = s(A, B) e_(B^A) when A is a subset of B
                grade(a) >  grade(b): right contraction, e_A |_ e_B = s(A, B) e_(A^B) when B is a subset of A
    star        for the (m-1)-blade e_I missing index i, *e_I = s(i, I) e_i, so e_i ^ e_I = (*e_I)_i vol
                the inverse uses the same sign because s^2 = 1
    pi_n(v)     (-1)^(k(k-1)/2) contract(contract(v, n), n) with k = m - 2

s(A, B) is the canonical reordering sign: (-1) to the number of transpositions sorting the factors of A then B.
"""
from functools import lru_cache
from typing import Dict, Iterable, Optional, Sequence

import numpy as np


def bit_count(bits: int) -> int:
    return bin(bits).count('1')


def canonical_reordering_sign(a_bits: int, b_bits: int) -> int:
    """
    sign of the permutation putting the factors of blade a followed by blade b in canonical order
    :param a_bits: bitmask of blade a
    :param b_bits: bitmask of blade b
    :return: +1 or -1
    """
    a_bits = a_bits >> 1
    swaps = 0
    while a_bits:
        swaps += bit_count(a_bits & b_bits)
        a_bits = a_bits >> 1
    return -1 if swaps & 1 else 1


@lru_cache(maxsize=None)
def blade_grades(m: int) -> np.array:
    return np.array([bit_count(bits) for bits in range(1 << m)])


class MultiVector:
    """
    Element of the exterior algebra of R^m, components indexed by bitmask
    """

    def __init__(self, m: int, components: Optional[Sequence[float]] = None):
        """
        :param m: ambient dimension
        :param components: 2^m coefficients in bitmask order, zero if None
        """
        if m < 1:
            raise ValueError(f'Invalid ambient dimension: {m}')
        self.m = int(m)
        size = 1 << self.m
        if components is None:
            self.components = np.zeros(size)
        else:
            self.components = np.asarray(components, dtype=float).copy()
            if self.components.shape != (size,):
                raise ValueError(f'Invalid component count {self.components.shape} for m={m}, expected {size}')

    @classmethod
    def blade(cls, m: int, indices: Iterable[int], coefficient: float = 1.0) -> 'MultiVector':
        """
        coefficient times e_(i1) ^ e_(i2) ^ ..., indices are 1 based and may come in any order
        """
        out = cls(m)
        bits = 0
        sign = 1
        for index in indices:
            if not 1 <= index <= m:
                raise ValueError(f'Invalid basis index {index} for m={m}')
            single = 1 << (index - 1)
            if bits & single:
                return out
            sign *= canonical_reordering_sign(bits, single)
            bits |= single
        out.components[bits] = sign * coefficient
        return out

    @classmethod
    def vector(cls, values: Sequence[float]) -> 'MultiVector':
        values = np.asarray(values, dtype=float)
        out = cls(values.shape[0])
        for i, value in enumerate(values):
            out.components[1 << i] = value
        return out

    @classmethod
    def scalar(cls, m: int, value: float) -> 'MultiVector':
        out = cls(m)
        out.components[0] = value
        return out

    #
    # Grades
    #
    def grades(self, tol: float = 0.0) -> set:
        nonzero = np.abs(self.components) > tol
        return set(int(g) for g in blade_grades(self.m)[nonzero])

    @property
    def grade(self) -> Optional[int]:
        """
        the grade when the element is pure, None when mixed, 0 for the zero element
        """
        grades = self.grades()
        if not grades:
            return 0
        if len(grades) == 1:
            return grades.pop()
        return None

    def grade_part(self, k: int) -> 'MultiVector':
        return MultiVector(self.m, np.where(blade_grades(self.m) == k, self.components, 0.0))

    def to_vector(self) -> np.array:
        """
        coefficients of the grade 1 part as an array of length m
        """
        return np.array([self.components[1 << i] for i in range(self.m)])

    def terms(self) -> Dict[int, float]:
        return {bits: float(value) for bits, value in enumerate(self.components) if value != 0}

    #
    # Linear structure
    #
    def _check(self, other: 'MultiVector') -> None:
        if self.m != other.m:
            raise ValueError(f'Ambient dimensions differ: {self.m} and {other.m}')

    def __add__(self, other: 'MultiVector') -> 'MultiVector':
        self._check(other)
        return MultiVector(self.m, self.components + other.components)

    def __sub__(self, other: 'MultiVector') -> 'MultiVector':
        self._check(other)
        return MultiVector(self.m, self.components - other.components)

    def __mul__(self, scalar: float) -> 'MultiVector':
        return MultiVector(self.m, self.components * float(scalar))

    __rmul__ = __mul__

    def __neg__(self) -> 'MultiVector':
        return self * -1.0

    def __xor__(self, other: 'MultiVector') -> 'MultiVector':
        return wedge(self, other)

    def norm(self) -> float:
        return float(np.sqrt(np.sum(self.components ** 2)))

    def allclose(self, other: 'MultiVector', atol: float = 1e-12) -> bool:
        self._check(other)
        return bool(np.allclose(self.components, other.components, rtol=0.0, atol=atol))

    def __repr__(self) -> str:
        parts = []
        for bits, value in self.terms().items():
            factors = '^'.join(f'e{i + 1}' for i in range(self.m) if bits >> i & 1) or '1'
            parts.append(f'{value:+.6g}*{factors}')
        return f'MultiVector(m={self.m}: {" ".join(parts) or "0"})'


def wedge(a: MultiVector, b: MultiVector) -> MultiVector:
    """
    exterior product
    :raise ValueError: when the grades of two pure elements add up beyond m
    """
    a._check(b)
    if a.grade is not None and b.grade is not None and a.grade + b.grade > a.m:
        raise ValueError(f'Grade overflow: {a.grade} + {b.grade} > m={a.m}')
    out = np.zeros_like(a.components)
    for a_bits, a_value in a.terms().items():
        for b_bits, b_value in b.terms().items():
            if a_bits & b_bits:
                continue
            out[a_bits | b_bits] += canonical_reordering_sign(a_bits, b_bits) * a_value * b_value
    return MultiVector(a.m, out)


def contract(a: MultiVector, b: MultiVector) -> MultiVector:
    """
    metric interior product, the lower grade element is contracted into the higher one
    for pure grades p and q the result has grade |p - q|
    """
    a._check(b)
    a_grade = a.grade if a.grade is not None else max(a.grades())
    b_grade = b.grade if b.grade is not None else max(b.grades())
    left = a_grade <= b_grade
    out = np.zeros_like(a.components)
    for a_bits, a_value in a.terms().items():
        for b_bits, b_value in b.terms().items():
            if left and a_bits & b_bits != a_bits:
                continue
            if not left and a_bits & b_bits != b_bits:
                continue
            out[a_bits ^ b_bits] += canonical_reordering_sign(a_bits, b_bits) * a_value * b_value
    return MultiVector(a.m, out)


def star_identify(a: MultiVector) -> np.array:
    """
    the vector identified with an (m-1)-vector through the volume form
    :param a: pure grade m-1 element
    :return: array of length m
    :raise ValueError: on a different grade
    """
    if a.grade not in (a.m - 1, 0):
        raise ValueError(f'Invalid grade {a.grade} for star_identify, expected {a.m - 1}')
    full = (1 << a.m) - 1
    out = np.zeros(a.m)
    for i in range(a.m):
        complement = full ^ (1 << i)
        out[i] = canonical_reordering_sign(1 << i, complement) * a.components[complement]
    return out


def star_identify_inverse(v: Sequence[float]) -> MultiVector:
    """
    the (m-1)-vector identified with a vector, inverse of star_identify
    """
    v = np.asarray(v, dtype=float)
    m = v.shape[0]
    full = (1 << m) - 1
    out = MultiVector(m)
    for i in range(m):
        complement = full ^ (1 << i)
        out.components[complement] = canonical_reordering_sign(1 << i, complement) * v[i]
    return out


def normal_projection_sign(m: int) -> int:
    k = m - 2
    return -1 if (k * (k - 1) // 2) % 2 else 1


def project_normal(v: Sequence[float], n: MultiVector) -> np.array:
    """
    orthogonal projection of a vector onto the span of the factors of the unit (m-2)-vector n
    """
    vector = MultiVector.vector(v)
    projected = contract(contract(vector, n), n)
    return normal_projection_sign(n.m) * projected.to_vector()


def project_tangent(v: Sequence[float], n: MultiVector) -> np.array:
    return np.asarray(v, dtype=float) - project_normal(v, n)


class UnitSimpleKVector:
    """
    Unit simple (m-2)-vector, the gauss map value of a surface in R^m
    """

    def __init__(self, blade: MultiVector, tol: float = 1e-12):
        """
        :param blade: pure grade m-2 element of unit norm
        :param tol: tolerance of the unit norm and simplicity checks
        :raise ValueError: if the element is not a unit simple (m-2)-vector
        """
        if blade.m < 3:
            raise ValueError(f'Invalid ambient dimension for a gauss map: {blade.m}')
        if blade.grade != blade.m - 2:
            raise ValueError(f'Invalid grade {blade.grade}, expected {blade.m - 2}')
        if abs(blade.norm() - 1) > tol:
            raise ValueError(f'Invalid norm {blade.norm()}, expected 1')
        # plucker relation, n ^ n = 0 characterizes simple bivectors in R^4
        if blade.m == 4 and wedge(blade, blade).norm() > tol:
            raise ValueError(f'Bivector is not simple: |n ^ n| = {wedge(blade, blade).norm()}')
        self.blade = blade
        self.m = blade.m

    @classmethod
    def from_normals(cls, normals: Sequence[Sequence[float]], tol: float = 1e-12) -> 'UnitSimpleKVector':
        """
        n = n1 ^ ... ^ n_(m-2) from an orthonormal family of normal vectors
        """
        vectors = [MultiVector.vector(normal) for normal in normals]
        blade = vectors[0]
        for vector in vectors[1:]:
            blade = wedge(blade, vector)
        return cls(blade, tol)

    def project_normal(self, v: Sequence[float]) -> np.array:
        return project_normal(v, self.blade)

    def project_tangent(self, v: Sequence[float]) -> np.array:
        return project_tangent(v, self.blade)

    def __repr__(self) -> str:
        return f'UnitSimpleKVector({self.blade!r})'
