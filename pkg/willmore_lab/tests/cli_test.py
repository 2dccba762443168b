import json
import math
import tempfile
import unittest
from pathlib import Path
from unittest import mock

from willmore_lab.cli import Criterion, ExperimentConfig, Lab, canonical_json, run
from willmore_lab.cli.experiments import EnergyExperiment
from willmore_lab.cli.report import config_digest, load_schema
from willmore_lab.errors import ConformalityError, SolverError


class ConfigTest(unittest.TestCase):

    def examples(self):
        self.config = ExperimentConfig('energy', surface='torus_rev(t=2)', n_r=16, ladder='16,32')

    def test_defaults(self):
        self.examples()

        self.assertEqual((16, 32), self.config.grid_shape())
        self.assertEqual((16, 32), self.config.ladder)
        self.assertEqual(self.config.to_dict(), self.config.copy().to_dict())
        self.assertEqual(4, self.config.copy(m=4).m)

    def test_invalid_values(self):
        self.examples()

        with self.assertRaises(ValueError):
            ExperimentConfig('bogus')
        with self.assertRaises(ValueError) as em:
            ExperimentConfig('eigen', m=5)
        self.assertIn('Invalid m: 5', str(em.exception))
        with self.assertRaises(ValueError):
            ExperimentConfig('residual', ladder=[64, 32])
        with self.assertRaises(ValueError):
            ExperimentConfig('residue', radii=[0.5, 0.25])

    def test_file_overrides_flags(self):
        """
        values in the config file win over the command line flags
        """
        self.examples()

        with tempfile.TemporaryDirectory() as directory:
            path = Path(directory) / 'config.json'
            path.write_text(json.dumps({'command': 'energy', 'seed': 7}))
            config = ExperimentConfig.from_file(str(path), command='energy', seed=3, n_r=24)
            self.assertEqual(7, config.seed)
            self.assertEqual(24, config.n_r)

            path.write_text(json.dumps({'command': 'energy', 'colour': 'red'}))
            with self.assertRaises(ValueError):
                ExperimentConfig.from_file(str(path), command='energy')


#
#  *****  report  *****
#
class ReportTest(unittest.TestCase):

    def test_canonical_json(self):
        text = canonical_json({'b': 1, 'a': [1.5, None]})
        self.assertTrue(text.startswith('{\n  "a"'))
        self.assertEqual(text, canonical_json({'a': [1.5, None], 'b': 1}))
        with self.assertRaises(ValueError):
            canonical_json({'a': math.nan})

    def test_config_digest(self):
        """
        the digest ignores where the report is written
        """
        first = config_digest(ExperimentConfig('energy', output='a'))
        self.assertEqual(first, config_digest(ExperimentConfig('energy', output='b.json', progress=True)))
        self.assertNotEqual(first, config_digest(ExperimentConfig('energy', seed=1)))
        self.assertEqual(64, len(first))

    def test_criterion(self):
        self.assertTrue(Criterion('order', math.inf, 2.0, '>=').passed)
        self.assertFalse(Criterion('error', None, 1.0).passed)
        self.assertFalse(Criterion('error', math.nan, 1.0).passed)
        self.assertEqual('<=', Criterion('error', 0.5, 1.0).to_dict()['relation'])


#
#  *****  command line  *****
#
class RunTest(unittest.TestCase):

    def test_usage_errors(self):
        self.assertEqual(2, run(['bogus']))
        self.assertEqual(2, run(['eigen', '--m', '5']))
        self.assertEqual(2, run(['energy', '--n-r', 'many']))

    def test_energy_run(self):
        """
        the torus of revolution is integrated spectrally, the report follows the schema
        """
        with tempfile.TemporaryDirectory() as directory:
            code = run(['energy', '--surface', 'torus_rev(t=2)', '--n-r', '32', '--output', directory])
            self.assertEqual(0, code)
            report = json.loads((Path(directory) / 'energy.json').read_text(encoding='utf-8'))

        for key in load_schema()['required']:
            self.assertIn(key, report)
        self.assertEqual('energy', report['experiment'])
        self.assertEqual('1.0', report['schema_version'])
        self.assertTrue(report['passed'])
        self.assertEqual(['energy_closed_form'], [c['name'] for c in report['criteria']])

    def test_reports_are_deterministic(self):
        with tempfile.TemporaryDirectory() as directory:
            first = Path(directory) / 'first.json'
            second = Path(directory) / 'second.json'
            for path in (first, second):
                run(['energy', '--surface', 'clifford_torus', '--n-r', '16', '--output', str(path)])
            self.assertEqual(first.read_text(encoding='utf-8').replace('first.json', ''),
                             second.read_text(encoding='utf-8').replace('second.json', ''))


    def test_numerical_failure_fails_the_run(self):
        """
        a solver giving up inside the lab is reported as a failed criterion, exit code 1
        """
        with tempfile.TemporaryDirectory() as directory:
            with mock.patch.object(EnergyExperiment, 'compute', side_effect=ConformalityError('degenerate chart')):
                code = run(['energy', '--n-r', '16', '--output', directory])
            self.assertEqual(1, code)
            report = json.loads((Path(directory) / 'energy.json').read_text(encoding='utf-8'))

        self.assertFalse(report['passed'])
        self.assertEqual(['ConformalityError: degenerate chart'], [c['name'] for c in report['criteria']])

    def test_lorentz_norm_run(self):
        with tempfile.TemporaryDirectory() as directory:
            code = run(['lorentz-norm', '--ladder', '32,64,128', '--output', directory])
            self.assertEqual(0, code)
            report = json.loads((Path(directory) / 'lorentz-norm.json').read_text(encoding='utf-8'))

        self.assertEqual(['weak_norm_stability', 'l2_increase_violations', 'l22_matches_l2'],
                         [c['name'] for c in report['criteria']])
        self.assertEqual({'32', '64', '128'}, set(report['results']['inverse_r']))

    def test_wente_run(self):
        with tempfile.TemporaryDirectory() as directory:
            code = run(['wente-probe', '--n-r', '16', '--samples', '3', '--output', directory])
            self.assertEqual(0, code)
            report = json.loads((Path(directory) / 'wente-probe.json').read_text(encoding='utf-8'))

        self.assertEqual({'16', '32'}, set(report['results']['max_ratios']))
        self.assertAlmostEqual(report['results']['coordinate_pair']['closed_form'],
                               report['results']['coordinate_pair']['ratio'], delta=1e-6)

    def test_hodge_run(self):
        """
        the hodge report carries the roundtrip and orthogonality criteria of the decomposition
        """
        with tempfile.TemporaryDirectory() as directory:
            code = run(['hodge', '--n-r', '32', '--output', directory])
            self.assertIn(code, (0, 1))
            report = json.loads((Path(directory) / 'hodge.json').read_text(encoding='utf-8'))

        names = [c['name'] for c in report['criteria']]
        self.assertEqual(['hodge_roundtrip', 'hodge_orthogonality', 'energy_identity'], names)
        self.assertIn('orthogonality', report['results'])


class LabTest(unittest.TestCase):

    def test_lab_run(self):
        experiment = Lab(ExperimentConfig('energy', surface='torus_rev(t=2)', n_r=32)).run(render=False)
        self.assertTrue(experiment.passed)
        self.assertEqual([], experiment.failures)
        self.assertIn('energy', experiment.results)

    def test_numerical_failure(self):
        with mock.patch.object(EnergyExperiment, 'compute', side_effect=SolverError('stalled')):
            experiment = Lab(ExperimentConfig('energy', n_r=16)).run(render=False)
        self.assertFalse(experiment.passed)
        self.assertEqual(['SolverError: stalled'], [c.name for c in experiment.failures])

    def test_usage_error_propagates(self):
        with mock.patch.object(EnergyExperiment, 'compute', side_effect=ValueError('Invalid surface')):
            with self.assertRaises(ValueError):
                Lab(ExperimentConfig('energy', n_r=16)).run(render=False)


if __name__ == '__main__':
    unittest.main()
