import io
import json
import logging
import os
import sys
import tempfile
import unittest
from unittest.mock import MagicMock, patch

import numpy as np
from PyQt6.QtCore import QCoreApplication

from main import EXIT_CONFIG_ERROR, main
from modules.config import ExperimentSpec, RunConfig, parse_config
from modules.core.lab_runner import LOGGER_NAMES, BatchRunner
from modules.experiments import (
    SUMMARY_FILE,
    METADATA_FILE,
    RunContext,
    experiment_schemas,
    get_experiment,
    list_experiments,
)
from modules.workers import ExperimentWorker


def read(path):
    with open(path) as f:
        return f.read()


class TestCatalog(unittest.TestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmp.cleanup)

    def run_experiment(self, name, seed=0, **params):
        entry = get_experiment(name)
        merged = entry.defaults()
        merged.update(params)
        ctx = RunContext(self.tmp.name, name)
        return entry.run(merged, np.random.default_rng(seed), ctx), ctx

    def test_catalog_is_sorted_and_complete(self):
        """Test every experiment is registered with an anchor"""
        names = [entry.name for entry in list_experiments()]
        self.assertEqual(names, sorted(names))
        for required in ('tables', 'dolbeault', 'riccati-sandwich', 'rauch', 'gronwall', 'decay', 'ims',
                         'localization-bounds', 'cutoff-decay', 'casimir-alpha', 'mollify-bounds',
                         'mollify-papa', 'ess-bottom', 'surface', 'weyl'):
            self.assertIn(required, names)
        for entry in list_experiments():
            self.assertTrue(entry.anchor)
            self.assertIn(entry.name, entry.describe())

    def test_schemas_match_defaults(self):
        """Test schemas expose (default, data_type) pairs"""
        schemas = experiment_schemas()
        self.assertEqual(schemas['tables']['field'], ('R', 'str'))
        self.assertEqual(get_experiment('tables').defaults(), {'field': 'R', 'ell': 3})
        with self.assertRaises(KeyError):
            get_experiment('no-such-experiment')

    def test_tables_real_hyperbolic_space(self):
        """Test the RH^3 Hodge table and its CSV artifact"""
        result, ctx = self.run_experiment('tables')
        self.assertTrue(result['passed'])
        self.assertEqual(result['deltas'], [1.0, 0.0, 0.0, 1.0])
        self.assertEqual(ctx.artifacts, ['tables_hodge.csv'])
        lines = read(os.path.join(self.tmp.name, 'tables_hodge.csv')).splitlines()
        self.assertIn('k,delta_k,spectrum', lines)

    def test_tables_complex_hyperbolic_plane(self):
        """Test the CH^2 Hodge table"""
        result, _ = self.run_experiment('tables', field='C', ell=2)
        self.assertTrue(result['passed'])
        self.assertEqual(result['deltas'], [4.0, 1.0, 1.0, 1.0, 4.0])

    def test_dolbeault(self):
        """Test the Dolbeault table passes its checks"""
        result, ctx = self.run_experiment('dolbeault')
        self.assertTrue(result['passed'])
        self.assertTrue(os.path.exists(os.path.join(self.tmp.name, ctx.artifacts[0])))

    def test_casimir_alpha(self):
        """Test the curvature form of the Casimir potential on sl2"""
        result, _ = self.run_experiment('casimir-alpha', pairs=10)
        self.assertTrue(result['passed'])
        self.assertLess(result['sectional_curvature'], 0)

    def test_gronwall_uses_model_curvature_bound(self):
        """Test the Gronwall run scales v by the model's b when the curvature gradient is large"""
        self.assertIn('k0', get_experiment('gronwall').defaults())
        self.assertNotIn('b', get_experiment('gronwall').defaults())
        result, _ = self.run_experiment('gronwall', seed=5, trials=12, k0=1.0, max_gradient=0.9)
        self.assertEqual(result['failures'], [])
        self.assertLessEqual(result['worst_ratio'], 1.0)
        self.assertTrue(result['passed'])

    def test_decay_reports_signed_values_and_oracle(self):
        """Test the decay experiment writes K⊥(0), its bound and the collar oracle"""
        result, ctx = self.run_experiment('decay', body='disk', samples=4)
        self.assertTrue(result['passed'])
        self.assertFalse(result['vanishes'])
        self.assertLessEqual(result['slope'], -0.9)
        lines = read(os.path.join(self.tmp.name, ctx.artifacts[0])).splitlines()
        self.assertIn('r,k_perp,measured,bound,oracle,j0', lines)

    def test_ess_bottom_defaults(self):
        """Test the ess-bottom defaults run at h = 1e-3 with T up to 40 on both end types"""
        defaults = get_experiment('ess-bottom').defaults()
        self.assertEqual(defaults['h'], 1e-3)
        self.assertEqual(defaults['lengths'], [10.0, 20.0, 30.0, 40.0])
        for end in ('funnel', 'cusp'):
            result, _ = self.run_experiment('ess-bottom', end=end)
            self.assertTrue(result['passed'], msg=end)

    def test_randomized_results_depend_only_on_seed(self):
        """Test two runs with the same generator seed agree"""
        first, _ = self.run_experiment('riccati-sandwich', seed=3, trials=5)
        second, _ = self.run_experiment('riccati-sandwich', seed=3, trials=5)
        self.assertEqual(json.dumps(first, sort_keys=True, default=str),
                         json.dumps(second, sort_keys=True, default=str))


class QtTestCase(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.app = QCoreApplication.instance() or QCoreApplication([])

    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmp.cleanup)


class TestExperimentWorker(QtTestCase):
    def test_worker_reports_success(self):
        """Test worker signals and report file for a passing experiment"""
        spec = ExperimentSpec('tables', 'tables', 0, {'field': 'R', 'ell': 3})
        worker = ExperimentWorker(spec, 7, self.tmp.name, position=0, total=1)
        finished, progress, error = MagicMock(), MagicMock(), MagicMock()
        worker.finished.connect(finished)
        worker.progress.connect(progress)
        worker.error.connect(error)

        worker.run()

        error.assert_not_called()
        progress.assert_any_call(0, 1, "Running: tables (0/1)")
        progress.assert_called_with(1, 1, "Finished: tables (1/1)")
        record = finished.call_args[0][0]
        self.assertEqual(record['id'], 'tables')
        self.assertTrue(record['passed'])
        self.assertIsNone(record['error'])

        report = json.loads(read(os.path.join(self.tmp.name, 'tables.json')))
        self.assertTrue(report['passed'])
        self.assertEqual(report['seed'], 7)
        self.assertEqual(report['artifacts'], ['tables_hodge.csv'])

    def test_worker_reports_failure(self):
        """Test an exception inside an experiment becomes a failed report"""
        spec = ExperimentSpec('tables', 'bad-field', 0, {'field': 'X', 'ell': 3})
        worker = ExperimentWorker(spec, 0, self.tmp.name)
        finished, error = MagicMock(), MagicMock()
        worker.finished.connect(finished)
        worker.error.connect(error)

        worker.run()

        error.assert_called_once()
        self.assertIn('bad-field', error.call_args[0][0])
        record = finished.call_args[0][0]
        self.assertFalse(record['passed'])
        report = json.loads(read(os.path.join(self.tmp.name, 'bad-field.json')))
        self.assertEqual(report['result']['error_type'], 'DomainError')


class TestBatchRunner(QtTestCase):
    def config(self, experiments, seed=0, jobs=1, out=None):
        return parse_config({'run': {'seed': seed, 'jobs': jobs, 'out': out or self.tmp.name},
                             'experiment': experiments}, experiment_schemas())

    def test_empty_run(self):
        """Test a config without experiments exits 0 with an empty summary"""
        runner = BatchRunner(RunConfig(out=self.tmp.name), '0.0-test')
        self.assertEqual(runner.run(), 0)
        summary = json.loads(read(os.path.join(self.tmp.name, SUMMARY_FILE)))
        self.assertEqual(summary['experiments'], [])
        self.assertTrue(summary['passed'])
        self.assertTrue(os.path.exists(os.path.join(self.tmp.name, METADATA_FILE)))

    def test_failure_does_not_stop_other_experiments(self):
        """Test a failing experiment gives exit 1 while the rest still run"""
        config = self.config([{'name': 'tables', 'id': 'broken', 'field': 'X'},
                              {'name': 'dolbeault'}], jobs=2)
        self.assertEqual(BatchRunner(config, '0.0-test').run(), 1)
        summary = json.loads(read(os.path.join(self.tmp.name, SUMMARY_FILE)))
        self.assertEqual([e['id'] for e in summary['experiments']], ['broken', 'dolbeault'])
        self.assertEqual([e['passed'] for e in summary['experiments']], [False, True])
        self.assertIn('error', summary['experiments'][0])
        self.assertEqual(summary['failed'], 1)

    def test_filter_selects_by_name_or_id(self):
        """Test the name glob keeps config order and matches ids"""
        config = self.config([{'name': 'tables'}, {'name': 'dolbeault'}, {'name': 'tables', 'id': 'ch2'}])
        self.assertEqual([s.id for s in BatchRunner(config, 'x', 'tab*').specs], ['tables'])
        self.assertEqual([s.id for s in BatchRunner(config, 'x', 'ch*').specs], ['ch2'])

    def test_reports_are_reproducible(self):
        """Test the same config and seed give byte-identical reports"""
        experiments = [{'name': 'casimir-alpha', 'pairs': 5},
                       {'name': 'riccati-sandwich', 'trials': 5},
                       {'name': 'tables', 'field': 'C', 'ell': 2}]
        outputs = []
        for run in ('a', 'b'):
            out = os.path.join(self.tmp.name, run)
            jobs = 1 if run == 'a' else 3
            self.assertEqual(BatchRunner(self.config(experiments, seed=11, jobs=jobs, out=out), 'x').run(), 0)
            outputs.append(out)
        for name in (SUMMARY_FILE, 'casimir-alpha.json', 'riccati-sandwich.json', 'tables.json',
                     'tables_hodge.csv'):
            self.assertEqual(read(os.path.join(outputs[0], name)), read(os.path.join(outputs[1], name)))


class TestMain(QtTestCase):
    def setUp(self):
        super().setUp()
        self.addCleanup(setattr, sys, 'excepthook', sys.excepthook)

    def tearDown(self):
        for name in LOGGER_NAMES:
            logger = logging.getLogger(name)
            for handler in list(logger.handlers):
                logger.removeHandler(handler)
                handler.close()

    def write_config(self, text):
        path = os.path.join(self.tmp.name, 'run.toml')
        with open(path, 'w') as f:
            f.write(text)
        return path

    def test_list(self):
        """Test --list prints the catalog"""
        with patch('sys.stdout', new_callable=io.StringIO) as stdout:
            self.assertEqual(main(['--list']), 0)
        self.assertIn('ess-bottom', stdout.getvalue())

    def test_invalid_config_exit_code(self):
        """Test an unknown key exits with the config error code and names the key"""
        path = self.write_config('[[experiment]]\nname = "tables"\nradius = 1.0\n')
        with patch('sys.stderr', new_callable=io.StringIO) as stderr:
            self.assertEqual(main(['--config', path]), EXIT_CONFIG_ERROR)
        self.assertIn('experiment[0].radius', stderr.getvalue())

    def test_invalid_jobs_override(self):
        """Test --jobs 0 is rejected"""
        with patch('sys.stderr', new_callable=io.StringIO):
            self.assertEqual(main(['--jobs', '0', '--out', self.tmp.name]), EXIT_CONFIG_ERROR)

    def test_run_from_config(self):
        """Test a full run with CLI overrides"""
        log_file = os.path.join(self.tmp.name, 'lab.log')
        out = os.path.join(self.tmp.name, 'out')
        path = self.write_config(
            f'[logging]\nlevel = "WARNING"\nfile = "{log_file}"\n\n'
            '[[experiment]]\nname = "tables"\n\n[[experiment]]\nname = "dolbeault"\n'
        )
        self.assertEqual(main(['--config', path, '--out', out, '--seed', '5', '--filter', 'tab*']), 0)
        summary = json.loads(read(os.path.join(out, SUMMARY_FILE)))
        self.assertEqual(summary['seed'], 5)
        self.assertEqual([e['id'] for e in summary['experiments']], ['tables'])
        self.assertEqual(summary['config'], 'run.toml')


if __name__ == '__main__':
    unittest.main()
