"""
Testing of properties.py module
"""

import unittest

import numpy as np

from wcurve.cdg import check_cdg_algebra, check_cdg_module
from wcurve.properties import (SUITES, idempotent_suite, nakayama_suite,
                               random_curved_algebra, random_factorization,
                               rmod_suite, run_selftest, stasheff_suite,
                               telescope_suite)
from wcurve.ring import LocalRingSpec


class TestCurvedSamples(unittest.TestCase):
    """ Unit tests for the random curved algebras """

    def setUp(self):
        """ F3[e]/e^2 and a seeded generator """
        self.R = LocalRingSpec('eps', 3, 2)
        self.rng = np.random.default_rng(7)

    def test_fixed_sample(self):
        eps = self.R.uniformizer
        B = random_curved_algebra(self.R, self.rng, 2, True, 1, eps)
        self.assertEqual(B.unit, 'z0')
        self.assertSetEqual(set(B.labels), {'z0', 'z1', 'y0', 'y1'})
        self.assertEqual(B.h, {'z1': eps})
        self.assertTrue(check_cdg_algebra(B, weakly_curved=True).passed)
        F = random_factorization(B, eps, self.R.one)
        self.assertTrue(check_cdg_module(F).passed)

    def test_wrong_factorization(self):
        B = random_curved_algebra(self.R, self.rng, 3, False, 1,
                                  self.R.uniformizer)
        F = random_factorization(B, self.R.uniformizer, 2)
        self.assertFalse(check_cdg_module(F).passed)

    def test_invalid_samples(self):
        with self.assertRaises(ValueError):
            random_curved_algebra(self.R, self.rng, order=1)
        with self.assertRaises(ValueError):
            random_curved_algebra(LocalRingSpec('eps', 3, 1), self.rng)


class TestSuites(unittest.TestCase):
    """ Unit tests for the property suites at small scale """

    def setUp(self):
        """ A seeded generator """
        self.rng = np.random.default_rng(0)

    def test_telescope(self):
        report = telescope_suite(self.rng, 10)
        self.assertTrue(report.passed)
        self.assertEqual(report.verified_range['cases'], 10)

    def test_idempotents(self):
        self.assertTrue(idempotent_suite(self.rng, 5).passed)

    def test_nakayama(self):
        report = nakayama_suite(self.rng, 4)
        self.assertTrue(report.passed)
        self.assertEqual(report.checked, 8)

    def test_rmod(self):
        self.assertTrue(rmod_suite(self.rng, 2).passed)

    def test_stasheff(self):
        report = stasheff_suite(self.rng, 4, cap=3)
        self.assertTrue(report.passed)
        self.assertEqual(report.verified_range['accepted']
                         + report.verified_range['rejected'], 4)


class TestRunSelftest(unittest.TestCase):
    """ Unit tests for run_selftest """

    def test_selection_is_deterministic(self):
        first = run_selftest(3, ['telescope'], 0.1)
        second = run_selftest(3, ['telescope'], 0.1)
        self.assertEqual(len(first), 1)
        self.assertEqual(first[0].subject, 'selftest:telescope')
        self.assertDictEqual(first[0].to_dict(), second[0].to_dict())

    def test_unknown_suite(self):
        with self.assertRaises(ValueError):
            run_selftest(0, ['nonsense'])

    def test_suite_names(self):
        self.assertIn('stasheff', SUITES)
        self.assertEqual(SUITES['adjunction'][1], 8)


if __name__ == '__main__':
    unittest.main()
