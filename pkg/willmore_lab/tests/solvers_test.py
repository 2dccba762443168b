import math
import unittest
from unittest import mock

import numpy as np
from scipy.special import jn_zeros

from willmore_lab.disk_field import PolarField, PolarGrid, grad, norm_l2, perp_grad, sup
from willmore_lab.errors import SmallEnergyError, SolverError
from willmore_lab.solvers import (
    GaussOperators,
    an_invert,
    angular_wente_probe,
    eigenprobe,
    expansion_residuals,
    gauss_energy,
    hodge_decompose,
    jacobian,
    ln_invert,
    make_rng,
    neumann_mismatch,
    poisson,
    random_gauss_map,
    random_vector_field,
    require_small_energy,
    weighted_estimate_probe,
    weighted_probe,
    wente_probe,
    wente_solve,
)
from willmore_lab.solvers.sampling import constant_gauss_map


class PoissonTest(unittest.TestCase):

    def examples(self):
        self.grid = PolarGrid(n_r=16, n_theta=32)
        self.bowl = PolarField.from_function(self.grid, lambda x1, x2: 1 - x1 ** 2 - x2 ** 2)

    def test_dirichlet(self):
        """
        laplacian(u) = -4, u = 0 on the circle has the solution 1 - r^2
        """
        self.examples()

        u = poisson(PolarField.constant(self.grid, -4.0))
        np.testing.assert_allclose(u.values, self.bowl.values, atol=1e-10)
        np.testing.assert_allclose(u.boundary, 0.0)

    def test_dirichlet_data(self):
        self.examples()

        u = poisson(PolarField.zeros(self.grid), data=np.cos(self.grid.theta_nodes))
        # the harmonic extension of cos(theta) is x1
        np.testing.assert_allclose(u.values[..., 0], self.grid.x1, atol=1e-10)

    def test_neumann(self):
        """
        laplacian(u) = 4 with du/dr = 2 is solved by r^2 up to a constant
        """
        self.examples()

        f = PolarField.constant(self.grid, 4.0)
        np.testing.assert_allclose(neumann_mismatch(f, 2.0), 0.0, atol=1e-12)
        u = poisson(f, 'neumann', data=2.0)
        gradient = grad(u).values[..., 0]
        np.testing.assert_allclose(gradient[:, :, 0], 2 * self.grid.x1, atol=1e-8)
        np.testing.assert_allclose(gradient[:, :, 1], 2 * self.grid.x2, atol=1e-8)

    def test_incompatible_neumann(self):
        self.examples()

        with self.assertRaises(SolverError):
            poisson(PolarField.constant(self.grid, 1.0), 'neumann')

    def test_invalid_bc(self):
        self.examples()

        with self.assertRaises(ValueError):
            poisson(self.bowl, 'robin')


class HodgeTest(unittest.TestCase):

    def examples(self):
        self.grid = PolarGrid(n_r=16, n_theta=32)
        self.potential = PolarField.from_function(self.grid, lambda x1, x2: x1 ** 2 + x2 ** 2 - 1, boundary=True)

    def test_gradient_field(self):
        """
        a gradient of a potential vanishing on the circle is its own exact part
        """
        self.examples()

        decomposition = hodge_decompose(grad(self.potential))
        np.testing.assert_allclose(decomposition.C.values, self.potential.values, atol=1e-9)
        self.assertLessEqual(sup(grad(decomposition.D)), 1e-8)
        self.assertLessEqual(decomposition.roundtrip, 1e-8)
        self.assertLessEqual(decomposition.harmonic_defect, 1e-6)

    def test_curl_and_harmonic_parts(self):
        """
        X = grad(r^2 - 1) + perp_grad(r^2) + grad(x1)
        a dirichlet D keeps grad(x1) as the harmonic part, a neumann D absorbs it as perp_grad(-x2)
        """
        self.examples()

        rotation = PolarField.from_function(self.grid, lambda x1, x2: x1 ** 2 + x2 ** 2, boundary=True)
        shift = PolarField.from_function(self.grid, lambda x1, x2: x1, boundary=True)
        X = grad(self.potential) + perp_grad(rotation) + grad(shift)

        dirichlet = hodge_decompose(X, d_bc='dirichlet')
        np.testing.assert_allclose(dirichlet.C.values, self.potential.values, atol=1e-9)
        np.testing.assert_allclose(dirichlet.D.values, self.potential.values, atol=1e-9)
        np.testing.assert_allclose(dirichlet.harmonic.values[:, :, 0, 0], 1.0, atol=1e-8)
        np.testing.assert_allclose(dirichlet.harmonic.values[:, :, 1, 0], 0.0, atol=1e-8)
        self.assertLessEqual(dirichlet.roundtrip, 1e-8)
        self.assertLessEqual(max(dirichlet.orthogonality.values()), 1e-8)

        neumann = hodge_decompose(X)
        absorbed = PolarField.from_function(self.grid, lambda x1, x2: x1 ** 2 + x2 ** 2 - x2)
        np.testing.assert_allclose(grad(neumann.D).values, grad(absorbed).values, atol=1e-8)
        self.assertLessEqual(sup(neumann.harmonic), 1e-8)
        self.assertLessEqual(neumann.roundtrip, 1e-8)

    def test_roundtrip_detects_failed_solves(self):
        """
        with every poisson solve returning zero the roundtrip is the whole field
        """
        self.examples()

        rotation = PolarField.from_function(self.grid, lambda x1, x2: x1 * x2 * (x1 ** 2 + x2 ** 2), boundary=True)
        X = grad(self.potential) + perp_grad(rotation)
        self.assertLessEqual(hodge_decompose(X).roundtrip, 1e-8)

        def vanishing(f, bc='dirichlet', data=None, name=None):
            return PolarField.zeros(f.grid, f.cshape, boundary=True)

        with mock.patch('willmore_lab.solvers.hodge.poisson', vanishing):
            decomposition = hodge_decompose(X)
        self.assertAlmostEqual(1.0, decomposition.roundtrip, places=12)

    def test_invalid_condition(self):
        self.examples()

        with self.assertRaises(ValueError):
            hodge_decompose(grad(self.potential), d_bc='periodic')


class WenteTest(unittest.TestCase):

    def examples(self):
        self.grid = PolarGrid(n_r=16, n_theta=32)
        self.a = PolarField.from_function(self.grid, lambda x1, x2: x1, boundary=True)
        self.b = PolarField.from_function(self.grid, lambda x1, x2: x2, boundary=True)

    def test_coordinate_jacobian(self):
        """
        grad x1 . perp_grad x2 = -1, so phi = (1 - r^2) / 4
        """
        self.examples()

        np.testing.assert_allclose(jacobian(self.a, self.b).values, -1.0, atol=1e-10)
        report = wente_solve(self.a, self.b)
        expected = (1 - self.grid.r ** 2) / 4
        np.testing.assert_allclose(report.solution.values[..., 0], expected, atol=1e-10)
        self.assertIsNotNone(report.estimate_ratio)
        self.assertAlmostEqual(-math.pi, report.extras['jacobian_integral'], places=10)

    def test_vector_data(self):
        self.examples()

        with self.assertRaises(ValueError):
            wente_solve(PolarField.zeros(self.grid, (3,)), self.b)

    def test_angular_split_of_coordinate_pair(self):
        """
        phi = (1 - r^2) / 4 is radial, its whole mass sits in the zero mode
        """
        self.examples()

        report = angular_wente_probe(self.a, self.b)
        self.assertEqual('angular_wente', report.scheme)
        self.assertGreater(report.extras['mode_0'], 0.0)
        self.assertLessEqual(report.extras['mode_perp'], 1e-10)
        self.assertGreater(report.estimate_ratio, 0.0)

    def test_random_pairs_on_a_ladder(self):
        """
        the same random pairs are replayed on every rung, so the constant is stable under refinement
        """
        self.examples()

        report = wente_probe(self.grid, samples=5, seed=3, ladder=(16, 32))
        self.assertEqual([16, 32], list(report.ratios))
        self.assertEqual([5, 5], [len(values) for values in report.ratios.values()])
        self.assertLessEqual(report.stability(), 0.10)
        again = wente_probe(self.grid, samples=5, seed=3, ladder=(16, 32))
        self.assertEqual(report.ratios, again.ratios)


class WeightedEstimateTest(unittest.TestCase):

    def examples(self):
        self.grid = PolarGrid(n_r=16, n_theta=32)
        self.n = random_gauss_map(self.grid, make_rng(5), 3, 0.02)
        self.g = random_vector_field(self.grid, make_rng(6), 3)

    def test_ratio_splits_into_modes(self):
        self.examples()

        report = weighted_estimate_probe(self.n, self.g)
        self.assertEqual('weighted_estimate', report.scheme)
        self.assertFalse(report.extras['vacuous'])
        self.assertAlmostEqual(norm_l2(self.g) ** 2, report.extras['rhs'])
        self.assertAlmostEqual(report.extras['mode_0'] + report.extras['mode_perp'],
                               report.estimate_ratio * report.extras['rhs'])
        self.assertTrue(math.isfinite(report.estimate_ratio))

    def test_vacuous_data(self):
        self.examples()

        report = weighted_estimate_probe(self.n, PolarField.zeros(self.grid, (3,)))
        self.assertIsNone(report.estimate_ratio)
        self.assertTrue(report.extras['vacuous'])

    def test_random_data_on_a_ladder(self):
        self.examples()

        report = weighted_probe(self.grid, samples=3, seed=2, ladder=(16, 32), amplitude=0.02)
        self.assertEqual([16, 32], list(report.ratios))
        self.assertLessEqual(report.stability(), 0.20)


class InversionTest(unittest.TestCase):

    def examples(self):
        self.grid = PolarGrid(n_r=12, n_theta=16)
        self.n = constant_gauss_map(self.grid, 3)
        self.g = PolarField.from_function(self.grid, lambda x1, x2: [1.0 + x1, x2 ** 2, 2.0 - x1 * x2])
        self.ops = GaussOperators(self.n)

    def test_constant_gauss_map_operator(self):
        """
        with n = E3, A_n is the laplacian on the tangent components and -2 laplacian on the normal one
        """
        self.examples()

        v = PolarField.from_function(self.grid, lambda x1, x2: [x1 ** 2, x1 * x2, x2 ** 2], boundary=True)
        applied = self.ops.an_apply(v).values
        np.testing.assert_allclose(applied[..., 0], 2.0, atol=1e-8)
        np.testing.assert_allclose(applied[..., 1], 0.0, atol=1e-8)
        np.testing.assert_allclose(applied[..., 2], -4.0, atol=1e-8)
        np.testing.assert_allclose(self.ops.ln_apply(v).values, applied, atol=1e-9)

    def test_an_schemes_agree(self):
        """
        the fixed point iteration and the direct solve give the same v
        """
        self.examples()

        direct = an_invert(self.n, self.g, scheme='direct', ops=self.ops)
        fixed = an_invert(self.n, self.g, scheme='fixed_point', ops=self.ops)
        self.assertLessEqual(direct.extras['operator_residual'], 1e-8)
        difference = norm_l2(grad(direct.solution - fixed.solution)) / norm_l2(grad(direct.solution))
        self.assertLessEqual(difference, 1e-6)
        self.assertEqual('an_direct', direct.scheme)
        self.assertGreaterEqual(fixed.iterations, 1)

    def test_an_closed_form(self):
        """
        for n = E3, -2 laplacian(v3) = 2 - x1 x2 vanishing on the circle is v3 = (1 - r^2) / 4 + x1 x2 (r^2 - 1) / 24
        both schemes land on it, so the discrete operator has no spurious kernel
        """
        self.examples()

        r2 = self.grid.r ** 2
        x1, x2 = self.grid.x1, self.grid.x2
        expected = np.stack([
            (r2 - 1) / 4 + x1 * (r2 - 1) / 8,
            (r2 ** 2 - 1) / 32 + (1 - r2) * (x1 ** 2 - x2 ** 2) / 24,
            (1 - r2) / 4 + x1 * x2 * (r2 - 1) / 24,
        ], axis=-1)
        for scheme in ('direct', 'fixed_point'):
            report = an_invert(self.n, self.g, scheme=scheme, ops=self.ops)
            np.testing.assert_allclose(report.solution.values, expected, atol=1e-8)

        applied = self.ops.an_apply(PolarField(self.grid, expected, boundary=np.zeros((self.grid.n_theta, 3))))
        np.testing.assert_allclose(applied.values, self.g.values, atol=1e-8)

    def test_ln_series(self):
        """
        for a constant gauss map the wedge term vanishes and the neumann series stops after one term
        """
        self.examples()

        report = ln_invert(self.n, self.g, ops=self.ops)
        self.assertEqual('ln_neumann_series', report.scheme)
        self.assertLessEqual(report.extras['operator_residual'], 1e-8)
        self.assertIsNotNone(report.extras['regularity_probe'])
        l1 = ln_invert(self.n, self.g, data_class='l1', scheme='direct', ops=self.ops)
        self.assertLessEqual(l1.extras['operator_residual'], 1e-8)

    def test_small_energy(self):
        self.examples()

        self.assertLess(gauss_energy(self.n), 1e-20)
        rough = random_gauss_map(self.grid, make_rng(3), m=3, amplitude=5.0)
        with self.assertRaises(SmallEnergyError):
            require_small_energy(rough, 0.05)
        with self.assertRaises(SmallEnergyError):
            an_invert(rough, self.g)

    def test_invalid_arguments(self):
        self.examples()

        with self.assertRaises(ValueError):
            an_invert(self.n, self.g, scheme='jacobi')
        with self.assertRaises(ValueError):
            ln_invert(self.n, self.g, data_class='l2')
        with self.assertRaises(ValueError):
            an_invert(self.n, PolarField.zeros(self.grid, (4,)))


class EigenTest(unittest.TestCase):

    def examples(self):
        self.grid = PolarGrid(n_r=16, n_theta=16)
        self.n = constant_gauss_map(self.grid, 3)

    def test_flat_eigenvalues(self):
        """
        for n = E3 the eigenvalue nearest zero is the first dirichlet eigenvalue -j01^2, once per tangent component
        """
        self.examples()

        report = eigenprobe(self.n, k=2, seed=0)
        j01 = jn_zeros(0, 1)[0]
        np.testing.assert_allclose(report.eigenvalues, -j01 ** 2, rtol=1e-2)
        self.assertLessEqual(report.orthonormality_defect, 1e-8)
        self.assertIn(self.grid.n_r, report.regularity_probe)

        residuals = expansion_residuals(report.eigenfields[0], report.eigenfields)
        self.assertLessEqual(residuals[0], 1e-8)

    def test_full_operator_spectrum(self):
        """
        the normal block is -2 laplacian, its first eigenvalue 2 j01^2 comes right after the tangent pair
        """
        self.examples()

        report = eigenprobe(self.n, k=3, seed=1)
        j01 = jn_zeros(0, 1)[0]
        np.testing.assert_allclose(report.eigenvalues[:2], -j01 ** 2, rtol=1e-2)
        self.assertAlmostEqual(2 * j01 ** 2, report.eigenvalues[2], delta=2e-2 * 2 * j01 ** 2)
        self.assertGreater(min(abs(value) for value in report.eigenvalues), 5.0)

    def test_invalid_count(self):
        self.examples()

        with self.assertRaises(ValueError):
            eigenprobe(self.n, k=0)


if __name__ == '__main__':
    unittest.main()
