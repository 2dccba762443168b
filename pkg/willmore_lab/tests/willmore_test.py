import math
import unittest

import numpy as np

from willmore_lab import settings
from willmore_lab.disk_field import PolarGrid, sup
from willmore_lab.geometry import analyze
from willmore_lab.solvers.sampling import constant_gauss_map
from willmore_lab.surfaces import expected_residue, sample
from willmore_lab.willmore import (
    bootstrap_report,
    classical_residual,
    constant_vector_image,
    cross_form_check,
    divergence_form_residual,
    hodge_system_fields,
    ladder_grid,
    resolved_radius,
    residue,
    scalar_residual,
    self_adjointness_check,
)


class ResidualTest(unittest.TestCase):

    def examples(self):
        self.flat = analyze(sample('flat', PolarGrid(n_r=16, n_theta=32)))
        self.sphere = analyze(sample('sphere_stereo', PolarGrid(n_r=32, n_theta=64)))

    def test_flat_residuals(self):
        self.examples()

        self.assertLessEqual(classical_residual(self.flat).norms['sup'], 1e-10)
        self.assertLessEqual(divergence_form_residual(self.flat).norms['sup'], 1e-10)

    def test_sphere_is_willmore(self):
        """
        the round sphere solves every form of the equation on D_(1/2)
        """
        self.examples()

        classical = classical_residual(self.sphere)
        self.assertLessEqual(classical.norms['sup'], 1e-3)
        self.assertIsNotNone(classical.companion)
        self.assertEqual('scalar_m3', classical.companion.form)
        self.assertLessEqual(classical.companion.norms['sup'], 1e-3)
        self.assertLessEqual(divergence_form_residual(self.sphere).norms['sup'], 1e-3)

    def test_scalar_residual_dimension(self):
        self.examples()

        with self.assertRaises(ValueError):
            scalar_residual(analyze(sample('flat(m=4)', PolarGrid(n_r=16, n_theta=32))))

    def test_cross_form(self):
        """
        L_n H = -2 e^(2 lambda) times the classical residual for a hypersurface that is not willmore
        """
        self.examples()

        geom = analyze(sample('graph(0.1)', PolarGrid(n_r=32, n_theta=64)))
        check = cross_form_check(geom)
        self.assertEqual(-2.0, check['expected'])
        self.assertAlmostEqual(-2.0, check['ratio'], delta=0.05)

    def test_ladder_grid(self):
        grid = ladder_grid(32)
        self.assertEqual((32, 64), grid.shape)
        self.assertEqual(4, grid.fd_order)


class OperatorTest(unittest.TestCase):

    def examples(self):
        self.grid = PolarGrid(n_r=24, n_theta=48)

    def test_constant_vector_image(self):
        """
        constants lie in the kernel of L_n when n is constant
        """
        self.examples()

        image = constant_vector_image(constant_gauss_map(self.grid, 3), [1.0, -2.0, 0.5])
        self.assertLessEqual(sup(image), 1e-10)

    def test_self_adjointness(self):
        self.examples()

        report = self_adjointness_check(self.grid, samples=3, seed=7, m=3, amplitude=0.2)
        self.assertEqual([24], list(report.ratios))
        self.assertEqual(3, len(report.ratios[24]))
        self.assertLessEqual(max(report.ratios[24]), 1e-3)


class ResidueTest(unittest.TestCase):

    def examples(self):
        self.grid = PolarGrid(n_r=settings.RESIDUE_GRID_N_R, n_theta=2 * settings.RESIDUE_GRID_N_R)
        self.pair = sample('log_singular', self.grid)

    def test_log_singular_charge(self):
        """
        H = e3 log|x| with n = E3 carries the charge 2 pi e3 - 6 pi e3 = -4 pi e3
        """
        self.examples()

        report = residue(self.pair)
        np.testing.assert_allclose(expected_residue([0.0, 0.0, 1.0]), [0.0, 0.0, -4 * math.pi])
        np.testing.assert_allclose(report.c0, [0.0, 0.0, -4 * math.pi], rtol=2e-2, atol=1e-2)
        np.testing.assert_allclose(report.H0, [0.0, 0.0, 1.0], rtol=2e-2, atol=1e-3)
        self.assertFalse(report.flagged)

    def test_charge_on_two_grids(self):
        """
        the default radii follow the grid, so the charge does not depend on the resolution
        """
        for n_r in (128, settings.RESIDUE_GRID_N_R):
            grid = PolarGrid(n_r=n_r, n_theta=2 * n_r)
            report = residue(sample('log_singular', grid))
            np.testing.assert_allclose(report.c0, [0.0, 0.0, -4 * math.pi], rtol=2e-2, atol=1e-2)
            self.assertEqual([], report.extras['unresolved_radii'])
            self.assertGreaterEqual(min(report.radii), resolved_radius(grid))
            self.assertAlmostEqual(max(settings.RESIDUE_RADII), max(report.radii))

    def test_unresolved_radii(self):
        """
        annuli thinner than the radial spacing of a coarse grid are reported, not trusted
        """
        grid = PolarGrid(n_r=32, n_theta=64)
        self.assertGreater(resolved_radius(grid), settings.RESIDUE_RADII[-1])
        with self.assertWarns(UserWarning):
            report = residue(sample('log_singular', grid), radii=settings.RESIDUE_RADII)
        self.assertTrue(report.flagged)
        self.assertIn(settings.RESIDUE_RADII[-1], report.extras['unresolved_radii'])

    def test_invalid_radii(self):
        self.examples()

        with self.assertRaises(ValueError):
            residue(self.pair, radii=[0.8, 0.4, 0.2])


class HodgeSystemTest(unittest.TestCase):

    def examples(self):
        self.geom = analyze(sample('sphere_stereo', PolarGrid(n_r=32, n_theta=64)))

    def test_energy_identity(self):
        """
        the gradient energies of A and B add up to int 4 |pi_n grad H|^2 + |pi_T grad H|^2
        """
        self.examples()

        report = hodge_system_fields(self.geom)
        self.assertLessEqual(report.energy_identity['relative_defect'], 0.05)
        self.assertIsNotNone(report.jacobian_defects['B'])
        self.assertIn('divergence_theorem_A', report.boundary_checks)


class BootstrapTest(unittest.TestCase):

    def examples(self):
        self.rho = 0.02
        self.geom = analyze(sample(f'cap(rho={self.rho})', PolarGrid(n_r=16, n_theta=32)))

    def test_cap_final_ratio(self):
        """
        a small spherical cap has |grad n|^2 = 2 e^(2 lambda), so the final ratio tends to (1 + rho^2) / pi
        """
        self.examples()

        report = bootstrap_report(self.geom)
        self.assertLessEqual(report.energy, 0.05)
        self.assertAlmostEqual((1 + self.rho ** 2) / math.pi, report.final_ratio,
                               delta=1e-2 * (1 + self.rho ** 2) / math.pi)
        self.assertEqual('neumann_series', report.extras['scheme'])


if __name__ == '__main__':
    unittest.main()
