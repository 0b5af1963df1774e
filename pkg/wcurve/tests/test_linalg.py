"""
Testing of linalg.py module
"""

import unittest

import numpy as np

from wcurve import linalg
from wcurve.errors import NotAUnit
from wcurve.ring import LocalRingSpec


class TestSmith(unittest.TestCase):
    """ Unit tests for smith and solve """

    def setUp(self):
        """ F5[e]/e^3 and a few small matrices """
        self.R = LocalRingSpec('eps', 5, 3)
        e = [0, 1]
        e2 = [0, 0, 1]
        self.A = linalg.from_rows(self.R, [[e, e2], [1, 0]])
        self.diag = linalg.from_rows(self.R, [[e2, 0], [0, e]])

    def _check(self, A):
        snf = linalg.smith(A, self.R)
        UAV = linalg.matmul(linalg.matmul(snf.U, A, self.R), snf.V, self.R)
        self.assertTrue(linalg.equal(UAV, snf.D))
        linalg.inverse(snf.U, self.R)
        linalg.inverse(snf.V, self.R)
        return snf

    def test_factorization(self):
        snf = self._check(self.A)
        self.assertEqual(snf.exponents, [0, 2])
        self.assertEqual(snf.rank, 2)

    def test_pivots_sorted(self):
        snf = self._check(self.diag)
        self.assertEqual(snf.exponents, [1, 2])

    def test_zero_matrix(self):
        snf = self._check(linalg.zeros(self.R, 2, 3))
        self.assertEqual(snf.rank, 0)
        self.assertEqual(snf.exponents, [3, 3])

    def test_random_matrices(self):
        rng = np.random.default_rng(11)
        for _ in range(10):
            A = linalg.zeros(self.R, 3, 2)
            for idx in np.ndindex(A.shape):
                A[idx] = self.R.random_element(rng, int(rng.integers(0, 3)))
            snf = self._check(A)
            self.assertEqual(snf.exponents, sorted(snf.exponents))

    def test_solve(self):
        b = [self.R.element([0, 0, 1]), self.R.element([0, 2])]
        x = linalg.solve(self.diag, b, self.R)
        self.assertIsNotNone(x)
        Ax = linalg.matmul(self.diag, x.reshape(2, 1), self.R)[:, 0]
        self.assertEqual(list(Ax), b)

    def test_solve_inconsistent(self):
        b = [self.R.one, self.R.zero]
        self.assertIsNone(linalg.solve(self.diag, b, self.R))


class TestInverse(unittest.TestCase):
    """ Unit tests for inverse, rank and kernel """

    def setUp(self):
        """ Z/3^3 and its residue field """
        self.Z = LocalRingSpec('padic', 3, 3)
        self.k = self.Z.residue_field()

    def test_inverse(self):
        A = linalg.from_rows(self.Z, [[1, 3], [9, 2]])
        X = linalg.inverse(A, self.Z)
        self.assertTrue(linalg.equal(linalg.matmul(A, X, self.Z),
                                     linalg.identity(self.Z, 2)))

    def test_singular_residue(self):
        A = linalg.from_rows(self.Z, [[3, 1], [0, 3]])
        with self.assertRaises(NotAUnit):
            linalg.inverse(A, self.Z)

    def test_rank_and_kernel(self):
        A = linalg.from_rows(self.k, [[1, 2, 0], [2, 1, 0]])
        self.assertEqual(linalg.rank(A, self.k), 1)
        K = linalg.kernel(A, self.k)
        self.assertEqual(K.shape, (3, 2))
        self.assertTrue(linalg.is_zero(linalg.matmul(A, K, self.k)))

    def test_residue_matrix(self):
        A = linalg.from_rows(self.Z, [[4, 3]])
        Abar = linalg.residue_matrix(A, self.Z)
        self.assertEqual(list(Abar[0]), [self.k.one, self.k.zero])


if __name__ == '__main__':
    unittest.main()
