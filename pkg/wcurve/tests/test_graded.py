"""
Testing of graded.py module
"""

import unittest

from wcurve.errors import OutsideWindow, RankMismatch, WindowTruncation
from wcurve.graded import (FreeComplex, GradedMap, GradedModule,
                           find_homotopy, fold_mod2, hom_internal,
                           homology_mod_m, homotopy_by_linear_solve,
                           is_contractible, is_contracting_homotopy,
                           is_isomorphism, reduce_mod_m, smith_homology,
                           tensor)
from wcurve.linalg import from_rows
from wcurve.ring import LocalRingSpec


def two_term(ring, coefficient, **window):
    """The complex 0 -> R a -> R b -> 0 with d(a) = coefficient * b."""
    M = GradedModule(ring, {'a': 0, 'b': 1}, **window)
    c = ring.element(coefficient)
    d = GradedMap(M, M, 1, {'a': {'b': c} if c else {}, 'b': {}})
    return FreeComplex(M, d)


class TestGradedModule(unittest.TestCase):
    """ Unit tests for GradedModule and GradedMap """

    def setUp(self):
        """ F5[e]/e^2 and a module with ranks {0: 2, 1: 1} """
        self.R = LocalRingSpec('eps', 5, 2)
        self.M = GradedModule(self.R, {'x': 0, 'y': 0, 'z': 1})

    def test_ranks_and_support(self):
        self.assertEqual(self.M.ranks(), {0: 2, 1: 1})
        self.assertEqual(self.M.support(), [0, 1])
        self.assertEqual(self.M.basis(0), ['x', 'y'])
        self.assertEqual(self.M.rank(5), 0)

    def test_shift(self):
        S = self.M.shift(1)
        self.assertEqual(S.ranks(), {-1: 2, 0: 1})

    def test_direct_sum_and_tensor(self):
        self.assertEqual(self.M.direct_sum(self.M).ranks(), {0: 4, 1: 2})
        self.assertEqual(tensor(self.M, self.M).ranks(), {0: 4, 1: 4, 2: 1})

    def test_unknown_image(self):
        f = GradedMap(self.M, self.M, 1, {'x': {'z': self.R.one}})
        self.assertEqual(f.apply({'x': self.R.element(2)}),
                         {'z': self.R.element(2)})
        with self.assertRaises(OutsideWindow):
            f.image('y')

    def test_compose_and_identity(self):
        f = GradedMap(self.M, self.M, 1, {'x': {'z': self.R.one},
                                          'y': {'z': self.R.uniformizer},
                                          'z': {}})
        g = f.compose(GradedMap.identity(self.M))
        self.assertTrue(g.equals(f, self.M.labels))
        self.assertTrue(f.compose(f).is_zero())

    def test_hom_internal(self):
        H = hom_internal(self.M, self.M)
        self.assertEqual(H.ranks(), {-1: 2, 0: 5, 1: 2})
        self.assertEqual(H.degree[('z', 'x')], -1)


class TestFreeComplex(unittest.TestCase):
    """ Unit tests for complexes, homology and homotopies """

    def setUp(self):
        """ Over F5[e]/e^2: d = e (residue homology (1, 1)) and d = 1 """
        self.R = LocalRingSpec('eps', 5, 2)
        self.eps = two_term(self.R, [0, 1])
        self.unit = two_term(self.R, 1)

    def test_square_check(self):
        M = GradedModule(self.R, {'a': 0, 'b': 1, 'c': 2})
        d = GradedMap(M, M, 1, {'a': {'b': self.R.one},
                                'b': {'c': self.R.one}, 'c': {}})
        with self.assertRaises(ValueError):
            FreeComplex(M, d)
        self.assertEqual(len(FreeComplex(M, d, check=False).square_defect()),
                         1)

    def test_residue_homology(self):
        dims = homology_mod_m(self.eps)
        self.assertEqual({n: v['dim'] for n, v in dims.items()}, {0: 1, 1: 1})
        dims = homology_mod_m(self.unit)
        self.assertEqual({n: v['dim'] for n, v in dims.items()}, {0: 0, 1: 0})

    def test_contracting_homotopy(self):
        h = find_homotopy(self.unit)
        self.assertIsNotNone(h)
        self.assertTrue(is_contracting_homotopy(self.unit.d, h))
        self.assertIsNone(find_homotopy(self.eps))

    def test_linear_solve_oracle(self):
        s = homotopy_by_linear_solve(self.unit.module, self.unit.d)
        self.assertIsNotNone(s)
        self.assertTrue(is_contracting_homotopy(self.unit.d, s))
        self.assertIsNone(homotopy_by_linear_solve(self.eps.module,
                                                   self.eps.d))

    def test_smith_homology(self):
        groups = smith_homology(self.eps)
        self.assertEqual(groups[0].factors, [1])
        self.assertEqual(groups[1].factors, [1])
        R3 = LocalRingSpec('eps', 5, 3)
        groups = smith_homology(two_term(R3, [0, 0, 1]))
        self.assertEqual(groups[0].factors, [2])
        self.assertEqual(groups[1].factors, [2])
        self.assertEqual(smith_homology(self.unit)[0].factors, [])

    def test_is_contractible(self):
        self.assertTrue(is_contractible(self.unit))
        self.assertFalse(is_contractible(self.eps))

    def test_window_truncation(self):
        C = two_term(self.R, 1, window=(0, 1), open_above=True)
        with self.assertRaises(WindowTruncation):
            find_homotopy(C)

    def test_fold_mod2(self):
        folded = fold_mod2(self.eps)
        self.assertEqual(folded['ranks'], {'even': 1, 'odd': 1})
        self.assertEqual(folded['residue_homology'], {'even': 1, 'odd': 1})

    def test_reduce_mod_m(self):
        k = LocalRingSpec('eps', 5, 1)
        self.assertEqual(reduce_mod_m(self.eps).module.ring, k)
        self.assertTrue(reduce_mod_m(self.eps).d.is_zero())
        self.assertFalse(reduce_mod_m(self.unit).d.is_zero())
        A = reduce_mod_m(from_rows(self.R, [[[0, 1], 1]]))
        self.assertFalse(A[0, 0])
        self.assertEqual(A[0, 1], k.one)
        with self.assertRaises(TypeError):
            reduce_mod_m('d')


class TestIsomorphism(unittest.TestCase):
    """ Unit tests for is_isomorphism """

    def setUp(self):
        """ Z/3^2 and a rank-two module in degree 0 """
        self.Z = LocalRingSpec('padic', 3, 2)
        self.M = GradedModule(self.Z, {'x': 0, 'y': 0})

    def test_unit_blocks(self):
        f = GradedMap(self.M, self.M, 0, {
            'x': {'x': self.Z.one, 'y': self.Z.element(3)},
            'y': {'y': self.Z.element(2)}})
        ok, inv = is_isomorphism(f)
        self.assertTrue(ok)
        self.assertTrue(f.compose(inv).equals(GradedMap.identity(self.M),
                                              self.M.labels))

    def test_singular_residue(self):
        f = GradedMap(self.M, self.M, 0, {'x': {'x': self.Z.element(3)},
                                          'y': {'y': self.Z.one}})
        self.assertEqual(is_isomorphism(f), (False, None))

    def test_rank_mismatch(self):
        N = GradedModule(self.Z, {'x': 0})
        f = GradedMap(self.M, N, 0, {'x': {'x': self.Z.one}, 'y': {}})
        with self.assertRaises(RankMismatch):
            is_isomorphism(f)


if __name__ == '__main__':
    unittest.main()
