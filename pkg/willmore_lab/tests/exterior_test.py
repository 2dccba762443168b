import unittest

import numpy as np

from willmore_lab.exterior import (
    MultiVector,
    UnitSimpleKVector,
    canonical_reordering_sign,
    normal_projectors,
    project_normal,
    star_identify,
    star_identify_inverse,
    vector_wedge_star,
    wedge,
)


class MultiVectorTest(unittest.TestCase):

    def examples(self):
        self.e1 = MultiVector.blade(3, [1])
        self.e2 = MultiVector.blade(3, [2])
        self.e3 = MultiVector.blade(3, [3])

    def test_wedge_antisymmetry(self):
        self.examples()

        self.assertTrue(wedge(self.e1, self.e2).allclose(MultiVector.blade(3, [1, 2])))
        self.assertTrue(wedge(self.e2, self.e1).allclose(-MultiVector.blade(3, [1, 2])))
        self.assertEqual(0.0, wedge(self.e1, self.e1).norm())
        self.assertTrue(MultiVector.blade(3, [2, 1]).allclose(-MultiVector.blade(3, [1, 2])))

    def test_reordering_sign(self):
        self.examples()

        self.assertEqual(1, canonical_reordering_sign(0b001, 0b110))
        self.assertEqual(-1, canonical_reordering_sign(0b010, 0b101))
        self.assertEqual(-1, canonical_reordering_sign(0b100, 0b001))

    def test_grade_overflow(self):
        """
        wedging a 2-vector with a 2-vector in R^3 exceeds the top grade
        """
        self.examples()

        with self.assertRaises(ValueError):
            wedge(MultiVector.blade(3, [1, 2]), MultiVector.blade(3, [2, 3]))

    def test_star_identify(self):
        """
        e_i ^ e_I = (*e_I)_i vol
        """
        self.examples()

        np.testing.assert_array_equal([1.0, 0.0, 0.0], star_identify(MultiVector.blade(3, [2, 3])))
        np.testing.assert_array_equal([0.0, -1.0, 0.0], star_identify(MultiVector.blade(3, [1, 3])))
        v = np.array([0.3, -1.2, 2.5])
        np.testing.assert_allclose(v, star_identify(star_identify_inverse(v)), atol=1e-15)

        with self.assertRaises(ValueError):
            star_identify(self.e1)


class OrientationTest(unittest.TestCase):
    """
    *(n ^ e1) = (-1)^(m-1) e2 for the oriented frame (e1, e2, n1, ..., n_(m-2)), so *(e1 ^ n) = -e2 for every m
    """

    def test_anchor_m3(self):
        n = MultiVector.blade(3, [3]).components
        np.testing.assert_allclose([0.0, -1.0, 0.0], vector_wedge_star(np.array([1.0, 0.0, 0.0]), n), atol=1e-15)
        n_wedge_e1 = wedge(MultiVector.blade(3, [3]), MultiVector.blade(3, [1]))
        np.testing.assert_allclose([0.0, 1.0, 0.0], star_identify(n_wedge_e1), atol=1e-15)

    def test_anchor_m4(self):
        n = MultiVector.blade(4, [3, 4]).components
        e1 = np.array([1.0, 0.0, 0.0, 0.0])
        np.testing.assert_allclose([0.0, -1.0, 0.0, 0.0], vector_wedge_star(e1, n), atol=1e-15)


class ProjectionTest(unittest.TestCase):

    def examples(self):
        self.v3 = np.array([1.0, 2.0, 3.0])
        self.v4 = np.array([1.0, 2.0, 3.0, 4.0])
        angle = 0.4
        first = np.array([0.0, np.sin(angle), np.cos(angle), 0.0])
        second = np.array([0.0, 0.0, 0.0, 1.0])
        self.tilted = UnitSimpleKVector.from_normals([first, second])
        self.normals = np.stack([first, second])

    def test_project_normal(self):
        self.examples()

        np.testing.assert_allclose([0.0, 0.0, 3.0], project_normal(self.v3, MultiVector.blade(3, [3])), atol=1e-15)
        np.testing.assert_allclose([0.0, 0.0, 3.0, 4.0], project_normal(self.v4, MultiVector.blade(4, [3, 4])),
                                   atol=1e-15)

    def test_projector_matches_frame(self):
        """
        the projector built from the gauss blade equals the sum of n_a n_a^T
        """
        self.examples()

        expected = self.normals.T @ self.normals
        P = normal_projectors(self.tilted.blade.components[None, None])[0, 0]
        np.testing.assert_allclose(expected, P, atol=1e-14)
        np.testing.assert_allclose(expected @ self.v4, self.tilted.project_normal(self.v4), atol=1e-14)
        np.testing.assert_allclose(self.v4 - expected @ self.v4, self.tilted.project_tangent(self.v4), atol=1e-14)

    def test_not_simple(self):
        """
        (e12 + e34) / sqrt(2) has unit norm but fails the plucker relation
        """
        self.examples()

        blade = (MultiVector.blade(4, [1, 2]) + MultiVector.blade(4, [3, 4])) * (1 / np.sqrt(2))
        with self.assertRaises(ValueError):
            UnitSimpleKVector(blade)

    def test_wrong_grade(self):
        self.examples()

        with self.assertRaises(ValueError):
            UnitSimpleKVector(MultiVector.blade(4, [1]))


if __name__ == '__main__':
    unittest.main()
