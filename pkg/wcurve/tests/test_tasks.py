"""
Testing of tasks.py module
"""

import os
import unittest

import wcurve
from wcurve.errors import (AxiomFailure, EnumerationBudgetExceeded,
                           ManifestSchemaError, OutsideWindow,
                           PrecisionInsufficient, WindowTruncation)
from wcurve.manifest import build_objects, read_manifest
from wcurve.reports import AxiomReport
from wcurve.tasks import (error_category, error_payload, run_examples,
                          run_selftest_tasks, run_task, run_tasks)

EXAMPLES = os.path.join(os.path.dirname(wcurve.__file__), 'manifest',
                        'examples')


class TestErrors(unittest.TestCase):
    """ Unit tests for error_category and error_payload """

    def test_categories(self):
        report = AxiomReport('x')
        report.fail('a', 1)
        self.assertEqual(error_category(AxiomFailure(report)), 'assertion')
        self.assertEqual(error_category(ManifestSchemaError('m', 'p')),
                         'manifest')
        self.assertEqual(error_category(WindowTruncation('w', [2])), 'window')
        self.assertEqual(error_category(OutsideWindow('o')), 'window')
        self.assertEqual(error_category(PrecisionInsufficient('p')),
                         'window')
        self.assertEqual(error_category(EnumerationBudgetExceeded('b')),
                         'budget')
        self.assertEqual(error_category(KeyError('k')), 'other')

    def test_payload(self):
        error = error_payload(WindowTruncation('cut', {3, 1}))
        self.assertDictEqual(error, {'type': 'WindowTruncation',
                                     'message': 'cut', 'category': 'window',
                                     'degrees': [1, 3]})
        error = error_payload(ManifestSchemaError('bad', 'objects.D'))
        self.assertEqual(error['path'], 'objects.D')
        report = AxiomReport('x')
        report.fail('a', 1)
        error = error_payload(AxiomFailure(report))
        self.assertEqual(error['report']['failures'][0]['axiom'], 'a')


class TestRunTask(unittest.TestCase):
    """ Unit tests for run_task and run_tasks on the small manifest """

    def setUp(self):
        """ Read and build the small example manifest """
        self.manifest = read_manifest(os.path.join(EXAMPLES, 'small.json'))
        self.objects = build_objects(self.manifest)

    def run_named(self, name):
        return run_task(self.manifest.task(name), self.manifest, self.objects)

    def test_passing_tasks(self):
        for name in ('algebra', 'factorization', 'koszul', 'bar', 'ainfty'):
            payload = self.run_named(name)
            self.assertTrue(payload['passed'], name)
            self.assertEqual(payload['exit_code'], 0)
            self.assertEqual(payload['task'], name)
        self.assertTrue(self.run_named('algebra')['weakly_curved'])
        self.assertTrue(self.run_named('ainfty')['oracle_agrees'])

    def test_semiacyclic_tasks(self):
        K = self.run_named('K-semiacyclic')['semiacyclic']
        U = self.run_named('U-semiacyclic')['semiacyclic']
        self.assertFalse(K['semiacyclic'])
        self.assertDictEqual(K['nonzero'], {'0': 1, '1': 1})
        self.assertTrue(U['semiacyclic'])

    def test_bar_payload(self):
        payload = self.run_named('bar')
        self.assertEqual(payload['weight_cap'], 2)
        self.assertEqual(payload['verb'], 'bar')

    def test_failing_task(self):
        task = {'name': 'x', 'verb': 'check-algebra', 'object': 'P'}
        payload = run_task(task, self.manifest, self.objects)
        self.assertFalse(payload['passed'])
        self.assertEqual(payload['exit_code'], 2)
        self.assertEqual(payload['error']['type'], 'ManifestSchemaError')
        self.assertEqual(payload['error']['path'], 'x.object')

    def test_jobs_keep_order(self):
        tasks = [self.manifest.task(n) for n in ('algebra', 'koszul', 'bar')]
        serial = run_tasks(tasks, self.manifest, self.objects)
        threaded = run_tasks(tasks, self.manifest, self.objects, jobs=3)
        self.assertListEqual([p['task'] for p in threaded],
                             ['algebra', 'koszul', 'bar'])
        self.assertListEqual(serial, threaded)


class TestRunCliffordTasks(unittest.TestCase):
    """ Unit tests for the ext task on the Clifford manifest """

    def setUp(self):
        """ Read and build the Clifford example manifest """
        self.manifest = read_manifest(os.path.join(EXAMPLES, 'clifford.json'))
        self.objects = build_objects(self.manifest)

    def test_ext_in_window(self):
        payload = run_task(self.manifest.task('ext'), self.manifest,
                           self.objects)
        self.assertTrue(payload['passed'])
        self.assertEqual(payload['exit_code'], 0)

    def test_ext_past_window(self):
        task = dict(self.manifest.task('ext'), window=[-6, 6])
        payload = run_task(task, self.manifest, self.objects)
        self.assertFalse(payload['passed'])
        self.assertEqual(payload['exit_code'], 3)
        self.assertEqual(payload['error']['type'], 'WindowTruncation')
        self.assertEqual(payload['error']['category'], 'window')


class TestRunExamples(unittest.TestCase):
    """ Unit tests for run_examples and run_selftest_tasks """

    def test_unknown_example(self):
        payload, = run_examples(['nope'])
        self.assertFalse(payload['passed'])
        self.assertEqual(payload['exit_code'], 5)
        self.assertEqual(payload['verb'], 'examples run')

    def test_kln(self):
        payload, = run_examples(['kln'])
        self.assertTrue(payload['passed'])
        self.assertEqual(payload['exit_code'], 0)

    def test_selftest(self):
        payload, = run_selftest_tasks(0, ['telescope'], 0.1)
        self.assertEqual(payload['task'], 'selftest:telescope')
        self.assertEqual(payload['verb'], 'selftest')
        self.assertTrue(payload['passed'])
        self.assertEqual(payload['seed'], 0)


if __name__ == '__main__':
    unittest.main()
