# -*- coding: utf-8 -*-

"""
Test suite for the harness module of the ltcoop package.

"""

import contextlib
import csv
import io
import json
import os
import shutil
import tempfile
import unittest
from unittest import mock

import numpy as np

from ltcoop import harness


_SMALL = {'file_size': 2**16}


class TestCase(unittest.TestCase):

    @classmethod
    def setUpClass(cls):
        cls._tmpdir = tempfile.mkdtemp()

    @classmethod
    def tearDownClass(cls):
        shutil.rmtree(cls._tmpdir)

    def _path(self, name):
        return os.path.join(self._tmpdir, name)

    def _main(self, *argv):
        out = io.StringIO()
        with contextlib.redirect_stdout(out), \
                contextlib.redirect_stderr(io.StringIO()):
            status = harness.main(list(argv))
        return status, out.getvalue()

    def test_experiment_spec(self):
        spec = harness.ExperimentSpec('churn', grid={'aus': 2}, seed=3)
        self.assertEqual(spec.grid, dict(aus=[2], leave=[0.3], back=[0.6]))
        self.assertEqual(spec.trials, 1)
        cells = harness.ExperimentSpec('loss-sweep').cells('loss', 'mode')
        self.assertEqual(len(cells), 10)
        self.assertEqual(list(cells[1].items()),
                         [('loss', 0.), ('mode', 'arq')])
        again = harness.ExperimentSpec.from_dict(spec.to_dict())
        self.assertEqual(again.to_dict(), spec.to_dict())
        # Defaults are not shared between experiments.
        spec.grid['aus'].append(5)
        self.assertEqual(harness.ExperimentSpec('churn').grid['aus'], [3])
        # Session defaults of an experiment, under the overrides.
        spec = harness.ExperimentSpec('arq-compare', session=dict(seed=1))
        self.assertEqual(spec.session, dict(file_size=2**22, seed=1))
        spec = harness.ExperimentSpec('arq-compare', session=_SMALL)
        self.assertEqual(spec.session, _SMALL)
        self.assertEqual(harness.ExperimentSpec('churn').session, {})

    def test_experiment_spec_errors(self):
        self.assertRaises(ValueError, harness.ExperimentSpec, 'goodput')
        self.assertRaises(ValueError, harness.ExperimentSpec, 'churn',
                          grid={'loss': [0]})
        self.assertRaises(ValueError, harness.ExperimentSpec, 'churn',
                          grid={'aus': []})
        self.assertRaises(ValueError, harness.ExperimentSpec, 'churn',
                          trials=0)
        self.assertRaises(ValueError, harness.ExperimentSpec.from_dict,
                          dict(name='churn', runs=3))
        path = self._path('spec.json')
        with open(path, 'w') as f:
            json.dump(dict(name='roundtrip', trials=3), f)
        self.assertEqual(harness.ExperimentSpec.load(path).trials, 3)

    def test_overhead_matrix(self):
        spec = harness.ExperimentSpec('overhead-matrix', grid=dict(
            n=[16, 128], symbol_size=[8, 16]), trials=20)
        result = harness.run_experiment(spec)
        self.assertEqual(result.failures, [])
        self.assertEqual(len(result.rows), 4)
        for row in result.rows:
            self.assertGreaterEqual(row['overhead_mean'], 0)
            self.assertGreaterEqual(row['overhead_std'], 0)
            self.assertEqual(row['trials'], 20)

    def test_codec_jobs(self):
        grid = dict(n=[8, 32], symbol_size=[4])
        serial = harness.run_experiment(harness.ExperimentSpec(
            'overhead-matrix', grid=grid, trials=5))
        parallel = harness.run_experiment(harness.ExperimentSpec(
            'overhead-matrix', grid=grid, trials=5, jobs=2))
        self.assertEqual(serial.rows, parallel.rows)

    def test_decode_throughput(self):
        result = harness.run_experiment(harness.ExperimentSpec(
            'decode-throughput', grid=dict(n=[32], symbol_size=[256]),
            trials=2))
        self.assertEqual(result.failures, [])
        self.assertGreater(result.rows[0]['throughput'], 0)

    def test_roundtrip(self):
        result = harness.run_experiment(harness.ExperimentSpec(
            'roundtrip', grid=dict(n=[1, 7, 64], symbol_size=[1, 100]),
            trials=3))
        self.assertEqual(result.failures, [])
        self.assertEqual([r['exact'] for r in result.rows], [3] * 6)

    def test_topology(self):
        config = harness.topology(3, _SMALL, seed=4, loss=0.1, mode='arq')
        self.assertEqual(config.mode, 'arq')
        self.assertEqual(config.seed, 4)
        self.assertEqual(config.file_size, 2**16)
        self.assertEqual([a.au_id for a in config.assistants], [1, 2, 3])
        self.assertEqual(config.direct.loss_rate, 0.1)
        self.assertEqual(config.assistants[0].uplink.loss_rate, 0.1)
        self.assertEqual(config.assistants[0].relay.loss_rate, 0.)
        self.assertEqual(config.assistants[0].relay.rate_limit, 1024e3)
        config = harness.topology(4, _SMALL, seed=4, loss=0.2, per_user=True)
        rates = [config.direct.loss_rate]
        rates += [a.uplink.loss_rate for a in config.assistants]
        self.assertEqual(len(set(rates)), 5)
        self.assertTrue(all(0 <= p <= 0.2 for p in rates))
        self.assertEqual([a.relay.loss_rate for a in config.assistants],
                         [0.] * 4)

    def test_goodput_vs_aus(self):
        spec = harness.ExperimentSpec('goodput-vs-aus',
                                      grid=dict(aus=[0, 1, 2, 3]),
                                      session={'file_size': 2**18})
        result = harness.run_experiment(spec)
        self.assertEqual(result.failures, [])
        goodput = [r['goodput'] for r in result.rows]
        self.assertTrue(np.all(np.diff(goodput) > 0))
        self.assertTrue(all(r['exact'] for r in result.rows))

    def test_churn(self):
        spec = harness.ExperimentSpec('churn', grid=dict(
            aus=[2], leave=[0.1], back=[0.2]), session={'file_size': 2**18})
        result = harness.run_experiment(spec)
        self.assertEqual(result.failures, [])
        self.assertEqual([r['scenario'] for r in result.rows],
                         ['steady', 'leave', 'leave-back'])
        self.assertEqual(result.rows[2]['churn'],
                         'remove:2@0.1 add:2@0.2')

    def test_loss_sweep(self):
        grid = harness.DEFAULTS['loss-sweep']['grid']
        self.assertEqual(grid['aus'], [0, 4])
        self.assertEqual(grid['per_user'], [False, True])
        spec = harness.ExperimentSpec('loss-sweep', grid=dict(
            loss=[0, 0.2], aus=[0, 2]), session={'file_size': 2**17})
        result = harness.run_experiment(spec)
        self.assertEqual(result.failures, [])
        self.assertEqual(len(result.rows), 16)
        self.assertTrue(all(r['exact'] for r in result.rows
                            if r['mode'] == 'lt'))
        # At loss 0 both loss models give the same session.
        lossless = [r for r in result.rows if r['loss'] == 0 and
                    r['mode'] == 'lt' and r['aus'] == 2]
        self.assertEqual(len(lossless), 2)
        self.assertEqual(lossless[0]['completion_time'],
                         lossless[1]['completion_time'])

    def test_arq_band(self):
        self.assertEqual(harness.ARQ_BAND, (0.85, 1.15))
        self.assertEqual(harness.DEFAULTS['arq-compare']['grid']['n'], [1024])

    def test_arq_compare(self):
        spec = harness.ExperimentSpec('arq-compare', grid=dict(aus=[1],
                                                               n=[64]),
                                      session={'file_size': 2**17})
        result = harness.run_experiment(spec)
        self.assertEqual(sorted(r['mode'] for r in result.rows),
                         ['arq', 'lt'])
        lt, arq = sorted(result.rows, key=lambda r: r['mode'] == 'arq')
        ratio = arq['goodput'] / lt['goodput']
        # The baseline sends no redundant packet.
        self.assertGreater(ratio, 1)
        for row in result.rows:
            self.assertEqual(row['n'], 64)
            self.assertAlmostEqual(row['ratio'], ratio)
            self.assertEqual(row['within_band'], 0.85 <= ratio <= 1.15)
        # A ratio out of the band is reported, never passed.
        failed = [f for f in result.failures if 'out of' in f]
        self.assertEqual(len(failed), 0 if lt['within_band'] else 1)
        with mock.patch.object(harness, 'ARQ_BAND', (0.5, 1.)):
            result = harness.run_experiment(spec)
        self.assertFalse(result.rows[0]['within_band'])
        self.assertEqual(len(result.failures), 1)
        self.assertIn('n=64', result.failures[0])

    def test_failed_session(self):
        spec = harness.ExperimentSpec('goodput-vs-aus', grid=dict(aus=[0]),
                                      session=dict(_SMALL, max_time=0.01))
        result = harness.run_experiment(spec)
        self.assertEqual(len(result.failures), 1)
        self.assertIn('aborted', result.rows[0]['error'])

    def test_incentive_tables(self):
        spec = harness.ExperimentSpec('incentive-tables', trials=30)
        result = harness.run_experiment(spec)
        self.assertEqual(result.failures, [])
        tables = [r['table'] for r in result.rows]
        self.assertEqual(tables.count('cost_spread'), 5)
        self.assertEqual(tables.count('bidders'), 4)
        self.assertGreater(tables.count('participants'), 0)

    def test_write_rows(self):
        path = self._path('rows.csv')
        harness.write_rows([dict(a=1, b=2), dict(b=3, c=4)], path)
        with open(path) as f:
            rows = list(csv.DictReader(f))
        self.assertEqual(rows, [dict(a='1', b='2', c=''),
                                dict(a='', b='3', c='4')])

    def test_summary(self):
        result = harness.ExperimentResult('x', [dict(a=0.123456, b='y')],
                                          ['broken'])
        text = harness.summary(result)
        self.assertIn('0.1235\ty', text)
        self.assertIn('x: 1 rows, 1 failed check(s).', text)
        self.assertTrue(text.endswith('  broken'))

    def test_main(self):
        output = self._path('roundtrip.csv')
        status, out = self._main('roundtrip', '--grid', 'n=4,8',
                                 '--grid', 'symbol_size=16', '--trials', '2',
                                 '--output', output)
        self.assertEqual(status, 0)
        self.assertIn('roundtrip: 2 rows, ok.', out)
        with open(output) as f:
            rows = list(csv.DictReader(f))
        self.assertEqual([r['n'] for r in rows], ['4', '8'])

        config = self._path('config.json')
        with open(config, 'w') as f:
            json.dump(dict(trials=1, grid=dict(n=[4], symbol_size=[8])), f)
        status, out = self._main('roundtrip', '--config', config)
        self.assertEqual(status, 0)
        self.assertIn('roundtrip: 1 rows, ok.', out)

    def test_main_errors(self):
        self.assertEqual(self._main('roundtrip', '--grid', 'speed=1')[0], 2)
        self.assertEqual(self._main('roundtrip', '--grid', 'n')[0], 2)
        self.assertEqual(self._main('roundtrip', '--trials', '0')[0], 2)
        with mock.patch.object(harness, 'ARQ_BAND', (10., 20.)):
            status, out = self._main('arq-compare', '--grid', 'aus=0',
                                     '--file-size', '16384')
        self.assertEqual(status, 1)
        self.assertIn('1 failed check(s)', out)


suite = unittest.TestLoader().loadTestsFromTestCase(TestCase)
