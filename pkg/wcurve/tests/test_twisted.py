"""
Testing of twisted.py module
"""

import unittest

from wcurve.barcobar import TwistingCochain, canonical_cochain_cobar, cobar
from wcurve.cdg import check_cdg_module
from wcurve.coalgebra import (check_cdg_comodule, regular_comodule,
                              star_action)
from wcurve.errors import AxiomFailure
from wcurve.golden import clifford_coalgebra
from wcurve.graded import GradedMap
from wcurve.ring import LocalRingSpec
from wcurve.twisted import (check_functoriality, closed_adjunction_counts,
                            comodule_from_module, comodule_from_right_module,
                            comodule_map, contramodule_from_module,
                            duality_hom_isomorphism, is_closed,
                            module_from_comodule, module_from_contramodule,
                            module_from_right_comodule)


class TestTwistedFunctors(unittest.TestCase):
    """ Unit tests for the functors twisted by the canonical cochain """

    def setUp(self):
        """ C = clifford over F2[e]/e^2, A = Cb(C) and M = A⊗^τC """
        self.R = LocalRingSpec('eps', 2, 2)
        self.C = clifford_coalgebra(self.R)
        self.A = cobar(self.C, window=(0, 4), max_len=4)
        self.tau = canonical_cochain_cobar(self.C, self.A)
        self.N = regular_comodule(self.C)
        self.M = module_from_comodule(self.tau, self.N)

    def test_module_from_comodule(self):
        self.assertTrue(self.M.is_free)
        self.assertEqual(self.M.generators, {'e': 0, 'c': 0})
        self.assertEqual(self.M.module.ranks(),
                         {0: 2, 1: 2, 2: 2, 3: 2, 4: 2})
        self.assertEqual(self.M.generator_diff('c'),
                         {(('c',), 'e'): self.R.element(-1)})
        self.assertTrue(check_cdg_module(self.M).passed)

    def test_zero_cochain_is_rejected(self):
        zero = TwistingCochain(self.C, self.A, {})
        with self.assertRaises(AxiomFailure):
            module_from_comodule(zero, self.N)
        unchecked = module_from_comodule(zero, self.N, check=False)
        self.assertFalse(check_cdg_module(unchecked).passed)

    def test_sides(self):
        with self.assertRaises(ValueError):
            module_from_comodule(self.tau, regular_comodule(self.C, 'right'))
        with self.assertRaises(ValueError):
            comodule_from_module(self.tau, star_action(self.N))

    def test_comodule_from_module(self):
        CM = comodule_from_module(self.tau, self.M)
        self.assertEqual(CM.side, 'left')
        self.assertEqual(len(CM.labels), 2 * len(self.M.labels))
        self.assertTrue(check_cdg_comodule(CM).passed)

    def test_contramodule_from_module(self):
        P = contramodule_from_module(self.tau, self.M)
        self.assertEqual(P.side, 'right')
        self.assertTrue(check_cdg_module(P).passed)

    def test_module_from_contramodule(self):
        P = contramodule_from_module(self.tau, self.M)
        Q = module_from_contramodule(self.tau, P, check=False)
        self.assertEqual(Q.side, 'left')
        self.assertEqual(len(Q.labels), len(self.A.labels) * len(P.labels))
        with self.assertRaises(ValueError):
            module_from_contramodule(self.tau, self.M)

    def test_right_side_variants(self):
        NR = module_from_right_comodule(self.tau,
                                        regular_comodule(self.C, 'right'))
        self.assertEqual(NR.side, 'right')
        self.assertEqual(NR.generators, {'e': 0, 'c': 0})
        self.assertEqual(NR.generator_diff('c'), {('e', ('c',)): self.R.one})
        CR = comodule_from_right_module(self.tau, NR)
        self.assertEqual(CR.side, 'right')
        self.assertTrue(check_cdg_comodule(CR).passed)
        with self.assertRaises(ValueError):
            module_from_right_comodule(self.tau, self.N)
        with self.assertRaises(ValueError):
            comodule_from_right_module(self.tau, self.M)

    def test_identity_is_closed(self):
        identity = GradedMap.identity(self.M.module)
        self.assertTrue(is_closed(self.M.d_map(), self.M.d_map(), identity))
        CM = comodule_from_module(self.tau, self.M)
        d = GradedMap(CM.module, CM.module, 1, CM.d)
        self.assertTrue(is_closed(d, d, comodule_map(CM, CM, identity)))

    def test_functoriality(self):
        identity = GradedMap.identity(self.M.module)
        report = check_functoriality(self.tau, self.M, self.M, identity)
        self.assertTrue(report.passed)
        self.assertGreater(report.checked, 0)

    def test_closed_adjunction_counts(self):
        left, right = closed_adjunction_counts(self.tau, self.N, self.M)
        self.assertEqual(left, right)
        self.assertGreaterEqual(left, self.R.size)

    def test_duality_labels(self):
        Q = star_action(self.N)
        report, phi = duality_hom_isomorphism(self.tau, self.M, Q)
        self.assertNotIn('bijective', [f['axiom'] for f in report.failures])
        self.assertEqual(phi.degree, 0)


if __name__ == '__main__':
    unittest.main()
