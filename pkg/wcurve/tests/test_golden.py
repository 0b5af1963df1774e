"""
Testing of golden.py module
"""

import unittest

from wcurve.cdg import check_cdg_algebra
from wcurve.coalgebra import check_cdg_coalgebra
from wcurve.golden import (EXAMPLES, clifford_coalgebra, clifford_pair,
                           dual_numbers_curved, kln2_coalgebra, kln2_pair,
                           kln_data, run_example)
from wcurve.homcalc import kln_vanishing_witness
from wcurve.reports import jsonable
from wcurve.ring import LocalRingSpec


class TestBuilders(unittest.TestCase):
    """ Unit tests for the example builders """

    def setUp(self):
        """ F5[e]/e^2 """
        self.R = LocalRingSpec('eps', 5, 2)

    def test_coalgebras(self):
        for C in (clifford_coalgebra(self.R), kln2_coalgebra(self.R),
                  clifford_coalgebra(self.R, 0)):
            self.assertTrue(check_cdg_coalgebra(C).passed, C.name)
        self.assertEqual(kln2_coalgebra(self.R).d['e'],
                         {'c': self.R.uniformizer})

    def test_dual_numbers(self):
        B = dual_numbers_curved(self.R)
        self.assertTrue(B.is_weakly_curved())
        self.assertTrue(check_cdg_algebra(B, weakly_curved=True).passed)
        self.assertEqual(dual_numbers_curved(self.R, 0).h, {})

    def test_pairs(self):
        pair = clifford_pair(self.R)
        self.assertSetEqual(set(pair.elements), {'1', 'y'})
        self.assertEqual(pair.t, self.R.uniformizer)
        pair = kln2_pair(self.R)
        self.assertIsNotNone(pair.homotopy)

    def test_kln_witness(self):
        report = kln_vanishing_witness(kln_data(self.R, 2))
        self.assertTrue(report.passed)
        self.assertGreater(report.checked, 0)


class TestRunExample(unittest.TestCase):
    """ Unit tests for run_example """

    def test_examples_pass(self):
        for name in EXAMPLES:
            payload = run_example(name)
            self.assertTrue(payload['passed'], name)
            self.assertEqual(payload['example'], name)
            self.assertDictEqual(payload['ring'],
                                 {'kind': 'eps', 'p': 5, 'N': 2})

    def test_clifford_ext(self):
        for p, N in ((5, 2), (0, 2), (5, 3), (0, 3)):
            R = LocalRingSpec('eps', p, N)
            payload = run_example('clifford', R)
            self.assertTrue(payload['passed'], R.label)
            degrees = {d['degree']: d for d in payload['ext']['degrees']}
            self.assertListEqual(degrees[0]['homology']['factors'], [N, N])
            self.assertDictEqual(payload['ext']['ring_table']['y*y'],
                                 jsonable({'1': R.uniformizer, 'y': R.zero}))
            self.assertEqual(payload['window'], [-3, 3])

    def test_kln2_exponent(self):
        payload = run_example('kln2', LocalRingSpec('eps', 3, 3))
        self.assertLessEqual(payload['exponent'], 1)
        self.assertEqual(payload['hom_homotopy_defect'], {})

    def test_unknown(self):
        with self.assertRaises(ValueError):
            run_example('hopf')


if __name__ == '__main__':
    unittest.main()
