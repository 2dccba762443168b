import math
import unittest

import numpy as np

from willmore_lab.disk_field import PolarField, PolarGrid, sup
from willmore_lab.errors import ConformalityError, GaugeError
from willmore_lab.geometry import (
    Immersion,
    analyze,
    build_frames,
    check_laplacian_identity,
    check_normal_derivative_identity,
    conformal_factor,
    liouville_curvature,
    liouville_defect,
    normal_laplacian,
    projector_routes_defect,
    require_conformal,
    second_fundamental,
    total_curvature,
)
from willmore_lab.surfaces import sample


class FlatChartTest(unittest.TestCase):

    def examples(self):
        self.grid = PolarGrid(n_r=16, n_theta=32)
        self.flat3 = analyze(sample('flat', self.grid))
        self.flat4 = analyze(sample('flat(m=4)', self.grid))

    def test_flat_curvature_vanishes(self):
        """
        the identity chart has no curvature and every pointwise identity holds to roundoff
        """
        self.examples()

        for geom in (self.flat3, self.flat4):
            self.assertLessEqual(sup(geom.H), 1e-10)
            self.assertLessEqual(sup(geom.shape.K), 1e-10)
            self.assertLessEqual(sup(check_normal_derivative_identity(geom.frames, geom.second)), 1e-10)
            self.assertLessEqual(sup(check_laplacian_identity(geom.immersion, geom.second, geom.lam)), 1e-10)
            self.assertLessEqual(geom.defect, 1e-12)
            self.assertTrue(geom.frames.gauged)

    def test_flat_curvature_under_refinement(self):
        """
        K from the gauss equation stays at roundoff as the grid is refined, the liouville route sits on a looser floor
        """
        for n_r in (16, 32):
            grid = PolarGrid(n_r=n_r, n_theta=2 * n_r)
            for surface in ('flat', 'flat(m=4)'):
                geom = analyze(sample(surface, grid))
                self.assertLessEqual(sup(geom.shape.K), 1e-12)
                self.assertLessEqual(sup(liouville_curvature(geom.frames)), 1e-6)

    def test_flat_frames(self):
        self.examples()

        self.assertEqual(1, self.flat3.frames.codimension)
        self.assertEqual(2, self.flat4.frames.codimension)
        self.assertLessEqual(self.flat4.frames.orthonormality_defect(), 1e-12)
        self.assertLessEqual(projector_routes_defect(self.flat4.frames), 1e-12)


class SphereChartTest(unittest.TestCase):

    def examples(self):
        self.grid = PolarGrid(n_r=32, n_theta=64)
        self.immersion = sample('sphere_stereo', self.grid)
        self.geom = analyze(self.immersion)

    def test_conformal_factor(self):
        self.examples()

        lam, defect = conformal_factor(self.immersion)
        self.assertLessEqual(defect, 1e-6)
        np.testing.assert_allclose(self.immersion.reference['lambda'].values, lam.values, atol=1e-6)
        self.assertAlmostEqual(0.5, self.immersion.immersion_kappa(), places=6)

    def test_mean_curvature(self):
        """
        H = -Phi / R^2 for the round sphere
        """
        self.examples()

        error = self.geom.H - self.immersion.reference['H']
        self.assertLessEqual(sup(error, 0.5), 1e-5)
        self.assertLessEqual(self.geom.second.symmetry_defect(), 1e-5)
        self.assertLessEqual(self.geom.second.mean_curvature_defect(self.geom.frames), 1e-12)

    def test_total_curvature(self):
        """
        the chart covers a hemisphere, int K dvol = 2 pi
        """
        self.examples()

        self.assertAlmostEqual(2 * math.pi, total_curvature(self.geom.frames), delta=1e-3)

    def test_curvature_routes_agree(self):
        """
        K = 1 on the unit sphere through both the gauss equation and the liouville equation
        """
        self.examples()

        mask = self.grid.region_mask(0.5)
        np.testing.assert_allclose(self.geom.shape.K.values[mask], 1.0, rtol=1e-4)
        self.assertLessEqual(liouville_defect(self.geom.frames, self.geom.second, 0.5), 1e-3)

    def test_gauss_map_frames(self):
        self.examples()

        self.assertLessEqual(self.geom.frames.orthonormality_defect(), 1e-12)
        self.assertLessEqual(projector_routes_defect(self.geom.frames), 1e-12)
        self.assertLessEqual(self.geom.frames.antisymmetry_defect(), 1e-5)


class CliffordChartTest(unittest.TestCase):

    def examples(self):
        self.grid = PolarGrid(n_r=20, n_theta=40)
        self.geom = analyze(sample('clifford_torus', self.grid))

    def test_codimension_two(self):
        """
        |H| = 1 / sqrt(2) for the unit clifford torus, the normal frame stays orthonormal after the gauge
        """
        self.examples()

        self.assertEqual(4, self.geom.m)
        magnitude = self.geom.H.magnitude().values[..., 0]
        mask = self.grid.region_mask(0.5)
        np.testing.assert_allclose(magnitude[mask], 1 / math.sqrt(2), atol=1e-6)
        self.assertLessEqual(self.geom.frames.orthonormality_defect(), 1e-10)
        self.assertTrue(self.geom.frames.gauged)


class ImmersionErrorTest(unittest.TestCase):

    def examples(self):
        self.grid = PolarGrid(n_r=12, n_theta=16)

    def test_not_conformal(self):
        self.examples()

        stretched = Immersion(PolarField.from_function(self.grid, lambda x1, x2: [x1, 2 * x2, 0 * x1], boundary=True))
        with self.assertRaises(ConformalityError):
            require_conformal(stretched)
        with self.assertRaises(ConformalityError):
            analyze(stretched)

    def test_degenerate(self):
        self.examples()

        constant = Immersion(PolarField.constant(self.grid, [1.0, 2.0, 3.0]))
        with self.assertRaises(ConformalityError):
            conformal_factor(constant)

    def test_low_dimension(self):
        self.examples()

        with self.assertRaises(ValueError):
            Immersion(PolarField.from_function(self.grid, lambda x1, x2: [x1, x2]))

    def test_gauge_required(self):
        """
        the frame expansion of the normal laplacian refuses ungauged frames
        """
        self.examples()

        frames = build_frames(sample('flat', self.grid))
        with self.assertRaises(GaugeError):
            normal_laplacian(frames, second_fundamental(frames))


if __name__ == '__main__':
    unittest.main()
