"""
Testing of rmod.py module
"""

import unittest

from wcurve import rmod
from wcurve.errors import EnumerationBudgetExceeded, PrecisionInsufficient
from wcurve.ring import LocalRingSpec


class TestFgModule(unittest.TestCase):
    """ Unit tests for FgModule, smith_decompose and FgMap """

    def setUp(self):
        """ F2[e]/e^2, the free module R and the torsion module R/e """
        self.R = LocalRingSpec('eps', 2, 2)
        self.free = rmod.FgModule.free(self.R, 1)
        self.torsion = rmod.FgModule(self.R, (1,))

    def test_factor_range(self):
        with self.assertRaises(ValueError):
            rmod.FgModule(self.R, (3,))

    def test_smith_decompose(self):
        M = rmod.smith_decompose([[[0, 1], 0], [0, 0]], self.R)
        self.assertEqual(M.factors, (2, 1))
        self.assertEqual(M.length, 3)
        self.assertFalse(M.is_free())
        self.assertEqual(rmod.smith_decompose([[1]], self.R).factors, ())

    def test_precision_insufficient(self):
        with self.assertRaises(PrecisionInsufficient):
            rmod.smith_decompose([[[0, 1], 0], [0, 0]], self.R,
                                 source_precision=3)

    def test_tensor_and_hom(self):
        self.assertEqual(rmod.tensor(self.torsion, self.free).factors, (1,))
        self.assertEqual(rmod.hom(self.torsion, self.free).factors, (1,))
        self.assertEqual(rmod.dualize(self.torsion).factors, (1,))
        self.assertEqual(rmod.cotensor(self.free, self.free).factors, (2,))

    def test_tensor_presentation(self):
        R3 = LocalRingSpec('eps', 3, 3)
        M = rmod.FgModule(R3, (3, 1))
        N = rmod.FgModule(R3, (2, 2, 1))
        matrix = rmod.tensor_presentation(M, N)
        self.assertEqual(matrix.shape, (6, 12))
        self.assertEqual(rmod.smith_decompose(matrix, R3),
                         rmod.tensor(M, N))
        self.assertEqual(rmod.tensor(M, N).factors, (2, 2, 1, 1, 1, 1))
        zero = rmod.FgModule(R3, ())
        self.assertTrue(rmod.smith_decompose(
            rmod.tensor_presentation(zero, N), R3).is_zero())

    def test_cohom(self):
        R3 = LocalRingSpec('eps', 3, 3)
        N = rmod.FgModule(R3, (2,))
        P = rmod.FgModule(R3, (3, 1))
        self.assertEqual(rmod.dualize(N).factors, (2,))
        self.assertEqual(rmod.cohom(N, P).factors, (2, 1))
        self.assertEqual(rmod.cohom(N, P),
                         rmod.tensor(rmod.dualize(N), P))
        self.assertEqual(rmod.cohom(rmod.FgModule.free(R3, 1), P), P)

    def test_ill_defined_map(self):
        with self.assertRaises(ValueError):
            rmod.FgMap(self.torsion, self.free, [[1]])
        f = rmod.FgMap(self.torsion, self.free, [[[0, 1]]])
        self.assertTrue(f.is_injective())

    def test_cokernel(self):
        f = rmod.FgMap(self.free, self.free, [[[0, 1]]])
        self.assertEqual(f.cokernel().factors, (1,))
        self.assertFalse(f.is_surjective())
        self.assertFalse(f.is_injective())
        self.assertTrue(rmod.FgMap(self.free, self.free,
                                   [[1]]).is_isomorphism())


class TestAdjunctions(unittest.TestCase):
    """ Unit tests for hom enumeration and the adjunction checks """

    def setUp(self):
        """ F2[e]/e^2 with R and R/e """
        self.R = LocalRingSpec('eps', 2, 2)
        self.free = rmod.FgModule.free(self.R, 1)
        self.torsion = rmod.FgModule(self.R, (1,))

    def test_hom_set_sizes(self):
        self.assertEqual(len(list(rmod.hom_set(self.free, self.free))), 4)
        self.assertEqual(len(list(rmod.hom_set(self.torsion,
                                               self.torsion))), 2)
        self.assertEqual(len(list(rmod.hom_set(self.torsion, self.free))), 2)

    def test_budget(self):
        R2 = rmod.FgModule.free(self.R, 2)
        with self.assertRaises(EnumerationBudgetExceeded):
            list(rmod.hom_set(R2, R2, budget=10))

    def test_adjunction_counts(self):
        counts = rmod.adjunction_counts(self.torsion, self.free, self.free)
        self.assertDictEqual(counts, {'left': 2, 'right': 2,
                                      'bijective': True})

    def test_phi_psi(self):
        X = rmod.FgModule(self.R, (2, 1))
        self.assertTrue(rmod.phi_psi_roundtrip(X))
        self.assertEqual(rmod.canonical_object(self.R), self.free)

    def test_assoc_with_free_argument(self):
        report = rmod.assoc_checks(self.free, self.torsion, self.torsion)
        self.assertTrue(report.passed)
        self.assertEqual(sorted(report.verified_range), ['a', 'b', 'c', 'd'])
        self.assertTrue(report.verified_range['a']['hypothesis'])

    def test_assoc_hypothesis_flags(self):
        report = rmod.assoc_checks(self.torsion, self.torsion, self.free)
        self.assertFalse(report.verified_range['a']['hypothesis'])
        self.assertTrue(report.verified_range['c']['hypothesis'])


if __name__ == '__main__':
    unittest.main()
