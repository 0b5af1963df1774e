"""
Testing of homcalc.py module
"""

import unittest

from wcurve.cdg import (CdgAlgebra, check_cdg_module, make_G_plus,
                        regular_module)
from wcurve.errors import NotWeaklyCurved
from wcurve.graded import GradedModule
from wcurve.homcalc import (bar_resolution, direct_sum, epsilon_nullhomotopy,
                            ext, semiacyclic)
from wcurve.ring import LocalRingSpec


def dual_numbers(ring, h):
    """R[z]/z^2 with |z| = 2, d = 0 and curvature h·z."""
    one = ring.one
    module = GradedModule(ring, {'1': 0, 'z': 2})
    mult = {('1', '1'): {'1': one}, ('1', 'z'): {'z': one},
            ('z', '1'): {'z': one}, ('z', 'z'): {}}
    c = ring.element(h)
    return CdgAlgebra(module, '1', mult, {'1': {}, 'z': {}},
                      {'z': c} if c else {}, name='D')


def exterior(ring):
    """R[y]/y^2 with |y| = -1 and d(y) = eps."""
    one = ring.one
    module = GradedModule(ring, {'1': 0, 'y': -1})
    mult = {('1', '1'): {'1': one}, ('1', 'y'): {'y': one},
            ('y', '1'): {'y': one}, ('y', 'y'): {}}
    return CdgAlgebra(module, '1', mult,
                      {'1': {}, 'y': {'1': ring.uniformizer}}, {}, name='Y')


class TestExt(unittest.TestCase):
    """ Unit tests for ext and semiacyclic """

    def setUp(self):
        """ Flat dual numbers and the exterior algebra over F3[e]/e^2 """
        self.R = LocalRingSpec('eps', 3, 2)
        self.D = regular_module(dual_numbers(self.R, 0))
        self.Y = regular_module(exterior(self.R))

    def test_ext_of_free_module(self):
        report = ext(self.D, self.D)
        self.assertEqual(report.factors(0), [2])
        self.assertEqual(report.factors(1), [])
        self.assertEqual(report.factors(2), [2])
        self.assertEqual(report.exponent(), 2)

    def test_ext_killed_by_eps(self):
        report = ext(self.Y, self.Y)
        self.assertEqual(sorted(report.groups), [-1, 0])
        self.assertEqual(report.factors(-1), [1])
        self.assertEqual(report.factors(0), [1])
        self.assertEqual(report.exponent(), 1)
        df = report.to_frame()
        self.assertEqual(df.index.name, 'degree')
        self.assertListEqual(list(df['factors']), ['1', '1'])

    def test_named_cycles(self):
        identity = {('1', ('1', '1')): self.R.one}
        report = ext(self.Y, self.Y, cycles={'1': identity})
        self.assertListEqual(report.names, ['1'])
        self.assertIn('1*1', report.ring_table)
        with self.assertRaises(ValueError):
            ext(self.Y, regular_module(self.Y.algebra),
                cycles={'1': identity})

    def test_semiacyclic(self):
        rep = semiacyclic(self.Y)
        self.assertFalse(rep.acyclic)
        self.assertEqual(rep.nonzero.get(0), 1)
        G = make_G_plus(regular_module(dual_numbers(self.R, [0, 1])))
        self.assertTrue(semiacyclic(G).acyclic)
        self.assertTrue(semiacyclic(G).to_dict()['semiacyclic'])


class TestBarResolution(unittest.TestCase):
    """ Unit tests for bar_resolution and direct_sum """

    def setUp(self):
        """ Regular module of the flat dual numbers over F3[e]/e^2 """
        self.R = LocalRingSpec('eps', 3, 2)
        self.B = dual_numbers(self.R, 0)
        self.M = regular_module(self.B)

    def test_generators(self):
        res = bar_resolution(self.M, cap=2)
        self.assertEqual(len(res.module.generators), 6)
        self.assertEqual(len(res.module.labels), 12)
        self.assertEqual(res.tensor_degree((('z', 'z'), ('1', '1'))), 3)

    def test_resolution_checks(self):
        res = bar_resolution(self.M, cap=3)
        self.assertTrue(res.check().passed)

    def test_invalid_arguments(self):
        with self.assertRaises(ValueError):
            bar_resolution(regular_module(self.B, 'right'))
        with self.assertRaises(ValueError):
            bar_resolution(self.M, cap=0)
        with self.assertRaises(NotWeaklyCurved):
            bar_resolution(regular_module(dual_numbers(self.R, 1)))

    def test_direct_sum(self):
        S = direct_sum(self.M, self.M)
        self.assertEqual(len(S.labels), 4)
        self.assertTrue(check_cdg_module(S).passed)
        with self.assertRaises(ValueError):
            direct_sum(self.M, regular_module(self.B, 'right'))


class TestEpsilonNullhomotopy(unittest.TestCase):
    """ Unit tests for epsilon_nullhomotopy """

    def setUp(self):
        """ The exterior algebra with d(y) = eps """
        self.R = LocalRingSpec('eps', 3, 2)
        self.Y = exterior(self.R)

    def test_both_sides(self):
        for side in ('left', 'right'):
            h, rep = epsilon_nullhomotopy(regular_module(self.Y, side), 'y')
            self.assertEqual(h.degree, -1)
            self.assertTrue(rep.passed)
            self.assertEqual(rep.checked, 2)

    def test_wrong_degree(self):
        with self.assertRaises(ValueError):
            epsilon_nullhomotopy(regular_module(self.Y), '1')

    def test_wrong_scalar(self):
        _, rep = epsilon_nullhomotopy(regular_module(self.Y), 'y', 1)
        self.assertFalse(rep.passed)


if __name__ == '__main__':
    unittest.main()
