"""
Testing of cli.py module
"""

import argparse
import io
import json
import os
import unittest
from unittest.mock import patch

import wcurve
from wcurve.cli import RunConfig, build_parser, main, parse_ring, parse_window
from wcurve.ring import LocalRingSpec

EXAMPLES = os.path.join(os.path.dirname(wcurve.__file__), 'manifest',
                        'examples')


def run_json(argv):
    """Run main with --json and return (exit code, decoded report)."""
    with patch('sys.stdout', new_callable=io.StringIO) as out:
        code = main(list(argv) + ['--json'])
    return code, json.loads(out.getvalue())


class TestArguments(unittest.TestCase):
    """ Unit tests for the argument parsers """

    def test_parse_window(self):
        self.assertEqual(parse_window('-3..3'), (-3, 3))
        self.assertEqual(parse_window('0..0'), (0, 0))
        for text in ('3..-3', '1,2', 'a..b', '4'):
            with self.assertRaises(argparse.ArgumentTypeError):
                parse_window(text)

    def test_parse_ring(self):
        self.assertEqual(parse_ring('eps:5:2'), LocalRingSpec('eps', 5, 2))
        self.assertEqual(parse_ring('padic:3:4'),
                         LocalRingSpec('padic', 3, 4))
        for text in ('eps:5', 'eps:4:2', 'eps:5:2:1', 'ring'):
            with self.assertRaises(argparse.ArgumentTypeError):
                parse_ring(text)

    def test_window_with_leading_minus(self):
        path = os.path.join(EXAMPLES, 'small.json')
        code, report = run_json(['semiacyclic', '--manifest', path,
                                 '--window', '-1..2'])
        self.assertEqual(code, 0)
        self.assertEqual(len(report['tasks']), 2)

    def test_run_config(self):
        config = RunConfig(window=(0, 2), weight_cap=3)
        self.assertDictEqual(config.overrides,
                             {'window': (0, 2), 'weight_cap': 3})
        args = build_parser().parse_args(['run', '--manifest', 'm.json',
                                          '--jobs', '2'])
        self.assertEqual(args.jobs, 2)
        self.assertEqual(args.verb, 'run')


class TestMain(unittest.TestCase):
    """ Unit tests for main """

    def setUp(self):
        """ Paths of the example manifests """
        self.small = os.path.join(EXAMPLES, 'small.json')
        self.clifford = os.path.join(EXAMPLES, 'clifford.json')

    def test_verb_filters_tasks(self):
        code, report = run_json(['check-algebra', '--manifest', self.small])
        self.assertEqual(code, 0)
        self.assertTrue(report['passed'])
        self.assertListEqual([t['task'] for t in report['tasks']],
                             ['algebra', 'factorization', 'koszul'])

    def test_selector_flags(self):
        code, report = run_json(['check-algebra', '--manifest', self.small,
                                 '--object', 'D'])
        self.assertEqual(code, 0)
        self.assertEqual(len(report['tasks']), 1)
        self.assertEqual(report['tasks'][0]['task'], 'check-algebra')

    def test_failing_cochain(self):
        code, report = run_json(['twist-check', '--manifest', self.clifford,
                                 '--cochain', 'tau0'])
        self.assertEqual(code, 1)
        self.assertFalse(report['passed'])

    def test_missing_manifest(self):
        code, report = run_json(['run'])
        self.assertEqual(code, 2)
        self.assertEqual(report['tasks'][0]['error']['path'], '--manifest')
        code, report = run_json(['run', '--manifest', 'no/such/file.json'])
        self.assertEqual(code, 2)
        self.assertEqual(report['tasks'][0]['error']['type'],
                         'ManifestSyntaxError')

    def test_bad_selector(self):
        code, report = run_json(['check-algebra', '--manifest', self.small,
                                 '--object', 'nothing'])
        self.assertEqual(code, 2)
        self.assertEqual(report['tasks'][0]['error']['type'],
                         'DanglingReference')

    def test_table_output(self):
        with patch('sys.stdout', new_callable=io.StringIO) as out:
            code = main(['check-algebra', '--manifest', self.small,
                         '--object', 'K'])
        self.assertEqual(code, 0)
        self.assertIn('check-algebra', out.getvalue())

    def test_selftest(self):
        code, report = run_json(['selftest', '--suite', 'telescope',
                                 '--scale', '0.1', '--seed', '2'])
        self.assertEqual(code, 0)
        self.assertEqual(report['tasks'][0]['seed'], 2)


if __name__ == '__main__':
    unittest.main()
