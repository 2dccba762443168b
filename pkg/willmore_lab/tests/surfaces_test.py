import math
import tempfile
import unittest
from pathlib import Path

import numpy as np

from willmore_lab.disk_field import PeriodicGrid, PolarGrid
from willmore_lab.solvers import make_rng
from willmore_lab.surfaces import (
    apply_mobius,
    clearance,
    compose,
    dilation,
    energy_report,
    get_surface,
    immersion_frame,
    inversion,
    li_yau_flag,
    parse_surface_id,
    random_mobius,
    rotation,
    sample,
    torus_energy,
    torus_rev,
    translation,
    willmore_energy,
    write_ply,
)


class CatalogTest(unittest.TestCase):

    def test_parse_surface_id(self):
        self.assertEqual(('torus_rev', [], {'t': 2.0}), parse_surface_id('torus_rev(t=2)'))
        self.assertEqual(('graph', [0.1, 0.02], {}), parse_surface_id('graph(0.1, 0.02)'))
        self.assertEqual(('flat', [], {}), parse_surface_id('flat'))

    def test_get_surface(self):
        self.assertEqual(4, get_surface('flat(m=4)').m)
        self.assertTrue(get_surface('torus_rev(t=sqrt(2))').willmore)
        self.assertAlmostEqual(math.sqrt(2), get_surface('torus_rev(t=sqrt(2))').params['t'])
        self.assertEqual('cap(rho=0.5, R=1.0)', get_surface('cap(rho=0.5)').label)

    def test_invalid_ids(self):
        with self.assertRaises(ValueError):
            parse_surface_id('cube')
        with self.assertRaises(ValueError):
            parse_surface_id('torus_rev(t=abc)')
        with self.assertRaises(ValueError):
            torus_rev(1.0)

    def test_periodic_grid_required(self):
        with self.assertRaises(ValueError):
            sample('sphere_stereo', PeriodicGrid(16, 16))


#
#  *****  energy  *****
#
class EnergyTest(unittest.TestCase):

    def test_torus_of_revolution(self):
        """
        W = pi^2 t^2 / sqrt(t^2 - 1), minimal at t = sqrt(2) with W = 2 pi^2
        """
        value = willmore_energy('torus_rev(t=2)', PeriodicGrid(64, 64))
        self.assertAlmostEqual(1.0, value / torus_energy(2.0), delta=1e-8)
        self.assertAlmostEqual(2 * math.pi ** 2, torus_energy(math.sqrt(2)), places=10)

    def test_clifford_torus(self):
        value = willmore_energy('clifford_torus', PeriodicGrid(32, 32))
        self.assertAlmostEqual(1.0, value / (2 * math.pi ** 2), delta=1e-8)

    def test_sphere(self):
        """
        the two stereographic hemispheres add up to 4 pi
        """
        report = energy_report('sphere_stereo', PolarGrid(n_r=32, n_theta=64))
        self.assertEqual('closed', report.kind)
        self.assertLessEqual(report.relative_error, 1e-4)
        self.assertEqual('below_8pi', report.li_yau)

    def test_cap_patch(self):
        report = energy_report('cap(rho=0.5)', PolarGrid(n_r=32, n_theta=64))
        self.assertEqual('patch', report.kind)
        self.assertAlmostEqual(0.8 * math.pi, report.closed_form, places=12)
        self.assertLessEqual(report.relative_error, 1e-4)

    def test_li_yau_flag(self):
        self.assertEqual('below_8pi', li_yau_flag(4 * math.pi))
        self.assertEqual('at_or_above', li_yau_flag(8 * math.pi))

    def test_synthetic_surface(self):
        with self.assertRaises(ValueError):
            willmore_energy('log_singular', PolarGrid(n_r=16, n_theta=32))


#
#  *****  mobius  *****
#
class MobiusTest(unittest.TestCase):

    def examples(self):
        self.grid = PeriodicGrid(128, 128)
        self.torus = sample('torus_rev(t=2)', self.grid)

    def test_elementary_maps(self):
        self.examples()

        np.testing.assert_allclose([0.5, 0.0, 0.0], inversion([0.0, 0.0, 0.0])(np.array([2.0, 0.0, 0.0])))
        np.testing.assert_allclose([3.0, 0.0, 0.0],
                                   compose(translation([1.0, 0.0, 0.0]), dilation(2.0))(np.array([1.0, 0.0, 0.0])))
        with self.assertRaises(ValueError):
            rotation([[1.0, 0.5, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]])
        with self.assertRaises(ValueError):
            dilation(-1.0)

    def test_clearance(self):
        self.examples()

        self.assertEqual(math.inf, clearance(self.torus.values, translation([1.0, 0.0, 0.0])))
        T = random_mobius(make_rng(11), self.torus.values)
        self.assertGreaterEqual(clearance(self.torus.values, T), 0.5)
        with self.assertRaises(ValueError):
            apply_mobius(self.torus, inversion([3.0, 0.0, 0.0]))

    def test_energy_invariance(self):
        """
        the willmore energy of a closed torus does not change under inversions
        """
        self.examples()

        T = compose(translation([0.0, 0.0, 0.5]), inversion([0.0, 0.0, 6.0], 4.0))
        before = willmore_energy(self.torus)
        after = willmore_energy(apply_mobius(self.torus, T))
        self.assertAlmostEqual(1.0, after / before, delta=1e-6)


#
#  *****  export  *****
#
class ExportTest(unittest.TestCase):

    def examples(self):
        self.disk = sample('sphere_stereo', PolarGrid(n_r=10, n_theta=16))
        self.torus = sample('torus_rev', PeriodicGrid(8, 12))

    def _counts(self, path: Path):
        header = path.read_text().split('end_header')[0].splitlines()
        vertices = int(next(line for line in header if line.startswith('element vertex')).split()[-1])
        faces = int(next(line for line in header if line.startswith('element face')).split()[-1])
        return vertices, faces

    def test_ply_counts(self):
        """
        disk charts wrap only in theta, periodic surfaces in both directions
        """
        self.examples()

        with tempfile.TemporaryDirectory() as directory:
            disk_path = Path(directory) / 'disk.ply'
            torus_path = Path(directory) / 'torus.ply'
            write_ply(self.disk, disk_path)
            write_ply(self.torus, torus_path)
            self.assertEqual((160, 2 * 9 * 16), self._counts(disk_path))
            self.assertEqual((96, 2 * 8 * 12), self._counts(torus_path))

    def test_immersion_frame(self):
        self.examples()

        self.assertEqual(['r', 'theta', 'phi_0', 'phi_1', 'phi_2'], list(immersion_frame(self.disk).columns))
        frame = immersion_frame(self.torus)
        self.assertEqual(['u', 'v', 'phi_0', 'phi_1', 'phi_2'], list(frame.columns))
        self.assertEqual(96, len(frame))


if __name__ == '__main__':
    unittest.main()
