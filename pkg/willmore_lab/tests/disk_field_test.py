import math
import tempfile
import unittest
from pathlib import Path

import numpy as np

from willmore_lab.disk_field import (
    PeriodicGrid,
    PolarField,
    PolarGrid,
    angular_split,
    boundary_integral,
    div,
    grad,
    integrate,
    laplacian,
    lorentz_norm,
    norm_l2,
    read_binary,
    read_csv,
    sup,
    write_binary,
    write_csv,
)
from willmore_lab.disk_field.utils import observed_orders, pairwise_sum


class PolarGridTest(unittest.TestCase):

    def examples(self):
        self.grid = PolarGrid(n_r=16, n_theta=32)

    def test_invalid_grids(self):
        """
        odd angle counts, odd fd orders and too few radial nodes for the stencil are rejected
        """
        self.examples()

        with self.assertRaises(ValueError) as em:
            PolarGrid(n_r=16, n_theta=31)
        self.assertEqual('Invalid n_theta: 31, must be even and >= 8', str(em.exception))

        with self.assertRaises(ValueError):
            PolarGrid(n_r=16, n_theta=32, fd_order=3)

        with self.assertRaises(ValueError) as em:
            PolarGrid(n_r=6, n_theta=32, fd_order=8)
        self.assertEqual('Invalid n_r: 6, must be at least fd_order + 1 = 9', str(em.exception))

    def test_nodes(self):
        self.examples()

        self.assertEqual((16, 32), self.grid.shape)
        self.assertTrue((self.grid.r_nodes > 0).all() and (self.grid.r_nodes < 1).all())
        self.assertTrue((np.diff(self.grid.r_nodes) > 0).all())
        self.assertEqual(self.grid, PolarGrid(16, 32))
        self.assertEqual(PolarGrid(32, 64), self.grid.refined(32))

    def test_quadrature(self):
        """
        the area of the disk and the moments of r^2 are integrated exactly
        """
        self.examples()

        one = PolarField.constant(self.grid, 1.0)
        self.assertAlmostEqual(math.pi, integrate(one), places=12)
        r_squared = PolarField.from_function(self.grid, lambda x1, x2: x1 ** 2 + x2 ** 2)
        self.assertAlmostEqual(math.pi / 2, integrate(r_squared), places=12)
        self.assertLess(integrate(one, region=0.5), integrate(one))

    def test_boundary_integral(self):
        self.examples()

        cos_squared = np.cos(self.grid.theta_nodes) ** 2
        self.assertAlmostEqual(math.pi, boundary_integral(self.grid, cos_squared), places=12)


class OperatorTest(unittest.TestCase):

    def examples(self):
        self.grid = PolarGrid(n_r=16, n_theta=32)
        self.f = PolarField.from_function(self.grid, lambda x1, x2: x1 ** 2 + x2, boundary=True)

    def test_grad_polynomial(self):
        """
        the radial stencils and the angular spectrum are exact on low degree polynomials
        """
        self.examples()

        g = grad(self.f)
        self.assertEqual((2, 1), g.cshape)
        np.testing.assert_allclose(g.values[:, :, 0, 0], 2 * self.grid.x1, atol=1e-9)
        np.testing.assert_allclose(g.values[:, :, 1, 0], 1.0, atol=1e-9)

    def test_laplacian_and_div_grad(self):
        self.examples()

        np.testing.assert_allclose(laplacian(self.f).values, 2.0, atol=1e-8)
        np.testing.assert_allclose(div(grad(self.f)).values, 2.0, atol=1e-8)

    def test_angular_split(self):
        self.examples()

        v0, v_perp = angular_split(self.f)
        np.testing.assert_allclose((v0 + v_perp).values, self.f.values, atol=1e-14)
        # x1^2 = r^2 (1 + cos 2t) / 2 has angular mean r^2 / 2
        np.testing.assert_allclose(v0.values[:, 0, 0], self.grid.r_nodes ** 2 / 2, atol=1e-13)

    def test_grid_mismatch(self):
        self.examples()

        with self.assertRaises(ValueError):
            _ = self.f + PolarField.zeros(PolarGrid(n_r=18, n_theta=32))


class NormTest(unittest.TestCase):

    def examples(self):
        self.grid = PolarGrid(n_r=16, n_theta=32)
        self.constant = PolarField.constant(self.grid, 2.0)

    def test_constant_lorentz_norms(self):
        """
        a constant c has every lorentz norm equal to |c| sqrt(pi)
        """
        self.examples()

        for which in ('2,1', '2,inf', '2,2', (2, 1)):
            report = lorentz_norm(self.constant, which)
            self.assertAlmostEqual(2 * math.sqrt(math.pi), report.value, places=10)
        self.assertAlmostEqual(2 * math.sqrt(math.pi), norm_l2(self.constant), places=10)

    def test_inverse_r_under_refinement(self):
        """
        1/|x| lies in L^(2,inf) but not in L^2: the weak norm stays near sqrt(pi) while the L^2 norm keeps growing
        """
        weak, strong = [], []
        for n_r in (32, 64, 128):
            grid = PolarGrid(n_r=n_r, n_theta=2 * n_r)
            f = PolarField.from_function(grid, lambda x1, x2: 1.0 / np.hypot(x1, x2))
            weak.append(lorentz_norm(f, '2,inf').value)
            strong.append(norm_l2(f))
            self.assertAlmostEqual(norm_l2(f), lorentz_norm(f, '2,2').value, delta=1e-10 * norm_l2(f))

        self.assertLessEqual((max(weak) - min(weak)) / min(weak), 0.05)
        self.assertTrue(np.all(np.diff(strong) > 0))

    def test_invalid_lorentz_label(self):
        self.examples()

        with self.assertRaises(ValueError):
            lorentz_norm(self.constant, '3,1')

    def test_zero_field(self):
        self.examples()

        report = lorentz_norm(PolarField.zeros(self.grid), '2,inf')
        self.assertEqual(0.0, report.value)
        self.assertEqual([], report.decreasing_rearrangement_sample)

    def test_sup_region(self):
        self.examples()

        r = PolarField(self.grid, self.grid.r)
        self.assertLess(sup(r, 0.5), 0.5)
        self.assertAlmostEqual(self.grid.r_nodes[-1], sup(r))


class IoTest(unittest.TestCase):

    def examples(self):
        self.grid = PolarGrid(n_r=10, n_theta=16)
        self.field = PolarField.from_function(self.grid, lambda x1, x2: [np.sin(x1), x1 * x2, np.exp(x2)])

    def test_csv_round_trip(self):
        self.examples()

        with tempfile.TemporaryDirectory() as directory:
            path = Path(directory) / 'field.csv'
            write_csv(self.field, path)
            loaded = read_csv(path)
        self.assertEqual(self.field.grid.shape, loaded.grid.shape)
        np.testing.assert_array_equal(self.field.values, loaded.values)

    def test_binary_round_trip(self):
        self.examples()

        with tempfile.TemporaryDirectory() as directory:
            path = Path(directory) / 'field.bin'
            write_binary(self.field, path)
            loaded = read_binary(path)
        np.testing.assert_array_equal(self.field.values, loaded.values)

    def test_bad_magic(self):
        self.examples()

        with tempfile.TemporaryDirectory() as directory:
            path = Path(directory) / 'field.bin'
            path.write_bytes(b'NOTAFILE' + bytes(64))
            with self.assertRaises(ValueError):
                read_binary(path)


class UtilsTest(unittest.TestCase):

    def test_observed_orders(self):
        orders = observed_orders([1e-2, 2.5e-3, 0.0], [32, 64, 128])
        self.assertAlmostEqual(2.0, orders[0])
        self.assertTrue(math.isnan(orders[1]))

    def test_pairwise_sum(self):
        values = np.arange(1001, dtype=float)
        self.assertEqual(500500.0, pairwise_sum(values))
        self.assertEqual(0.0, pairwise_sum(np.zeros(0)))

    def test_periodic_derivative(self):
        grid = PeriodicGrid(32, 16)
        values = np.sin(grid.u) * np.cos(2 * grid.v)
        np.testing.assert_allclose(grid.derivative(values, 0), np.cos(grid.u) * np.cos(2 * grid.v), atol=1e-12)
        self.assertAlmostEqual(0.0, grid.integrate(values), places=12)


if __name__ == '__main__':
    unittest.main()
