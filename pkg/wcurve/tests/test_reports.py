"""
Testing of reports.py module
"""

import unittest

from wcurve.errors import AxiomFailure
from wcurve.reports import AxiomReport, jsonable
from wcurve.ring import LocalRingSpec


class TestReports(unittest.TestCase):
    """ Unit tests for AxiomReport and jsonable """

    def setUp(self):
        """ A passing and a failing report """
        self.good = AxiomReport('cdg_algebra:A')
        self.good.ok()
        self.good.ok()
        self.bad = AxiomReport('cdg_module:M')
        self.bad.ok()
        self.bad.skip()
        self.bad.fail('d_square', ('x', 'y'), {'z': 1})

    def test_jsonable(self):
        R = LocalRingSpec('eps', 5, 2)
        value = {('a', 'b'): R.uniformizer, (): float('inf'), 3: {1, 2}}
        self.assertDictEqual(jsonable(value), {'a|b': [0, 1], '()': 'inf',
                                               '3': [1, 2]})

    def test_merge(self):
        merged = self.good.merge(self.bad, subject='both')
        self.assertEqual(merged.subject, 'both')
        self.assertEqual((merged.checked, merged.skipped), (3, 1))
        self.assertFalse(merged.passed)

    def test_raise_if_failed(self):
        self.assertIs(self.good.raise_if_failed(), self.good)
        with self.assertRaises(AxiomFailure) as ctx:
            self.bad.raise_if_failed()
        self.assertIs(ctx.exception.report, self.bad)

    def test_to_dict(self):
        out = self.bad.to_dict()
        self.assertEqual(out['subject'], 'cdg_module:M')
        self.assertEqual(out['failures'][0]['witness'], ['x', 'y'])
        self.assertEqual((out['checked'], out['skipped']), (1, 1))
        self.assertTrue(self.good.to_dict()['passed'])


if __name__ == '__main__':
    unittest.main()
