"""
Testing of cdg.py module
"""

import unittest

import numpy as np

from wcurve.barcobar import twist_algebra
from wcurve.cdg import (CdgAlgebra, CdgMorphism, HomComplex,
                        algebra_from_presentation, check_cdg_algebra,
                        check_cdg_module, check_cdg_morphism, free_module,
                        g_plus_contraction, make_G_plus, regular_module,
                        restrict_scalars, tensor_over_B)
from wcurve.errors import NotWeaklyCurved
from wcurve.graded import GradedModule, homology_mod_m, is_contracting_homotopy
from wcurve.properties import random_curved_algebra, random_factorization
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


class TestCdgAlgebra(unittest.TestCase):
    """ Unit tests for CdgAlgebra and check_cdg_algebra """

    def setUp(self):
        """ Dual numbers over F3[e]/e^2 with curvature e·z """
        self.R = LocalRingSpec('eps', 3, 2)
        self.D = dual_numbers(self.R, [0, 1])

    def test_axioms_hold(self):
        report = check_cdg_algebra(self.D, weakly_curved=True)
        self.assertTrue(report.passed)
        self.assertGreater(report.checked, 0)
        self.assertEqual(report.skipped, 0)
        self.assertEqual(report.verified_range['degrees'], [0, 2])

    def test_strong_curvature(self):
        D = dual_numbers(self.R, 1)
        self.assertFalse(D.is_weakly_curved())
        with self.assertRaises(NotWeaklyCurved):
            D.require_weakly_curved()
        report = check_cdg_algebra(D, weakly_curved=True)
        self.assertEqual([f['axiom'] for f in report.failures],
                         ['weak_curvature'])

    def test_broken_unit(self):
        self.D.mult[('z', '1')] = {'z': self.R.element(2)}
        report = check_cdg_algebra(self.D)
        self.assertIn('right_unit', [f['axiom'] for f in report.failures])

    def test_missing_product_is_skipped(self):
        del self.D.mult[('z', 'z')]
        report = check_cdg_algebra(self.D)
        self.assertTrue(report.passed)
        self.assertGreater(report.skipped, 0)

    def test_opposite_and_residue(self):
        self.assertTrue(check_cdg_algebra(self.D.opposite()).passed)
        residue = self.D.residue()
        self.assertEqual(residue.ring.N, 1)
        self.assertEqual(residue.h, {})

    def test_identity_morphism(self):
        self.assertTrue(check_cdg_morphism(CdgMorphism.identity(self.D)).passed)

    def test_presentation(self):
        B = algebra_from_presentation(self.R, [('x', 1)],
                                      [(('x', 'x'), {})], {}, {}, (0, 3))
        self.assertEqual(B.module.ranks(), {0: 1, 1: 1})
        self.assertEqual(B.product(('x',), ('x',)), {})
        self.assertTrue(check_cdg_algebra(B).passed)


class TestCdgModule(unittest.TestCase):
    """ Unit tests for free modules, Hom complexes and G+ """

    def setUp(self):
        """ The free module on u0, u1 with d(u0) = e·u1 and d(u1) = z·u0 """
        self.R = LocalRingSpec('eps', 3, 2)
        self.D = dual_numbers(self.R, [0, 1])
        self.F = free_module(self.D, {'u0': 0, 'u1': 1},
                             {'u0': {('1', 'u1'): self.R.uniformizer},
                              'u1': {('z', 'u0'): self.R.one}})

    def test_free_module_axioms(self):
        self.assertTrue(self.F.is_free)
        self.assertEqual(self.F.module.ranks(), {0: 1, 1: 1, 2: 1, 3: 1})
        self.assertTrue(check_cdg_module(self.F).passed)

    def test_wrong_curvature_fails(self):
        G = free_module(self.D, {'u0': 0, 'u1': 1},
                        {'u0': {('1', 'u1'): self.R.one},
                         'u1': {('z', 'u0'): self.R.one}})
        report = check_cdg_module(G)
        self.assertIn('curvature', [f['axiom'] for f in report.failures])

    def test_residue_complex(self):
        dims = homology_mod_m(self.F.residue_complex())
        self.assertEqual(dims[0]['dim'], 1)
        self.assertEqual(dims[1]['dim'], 0)

    def test_regular_module(self):
        flat = dual_numbers(self.R, 0)
        for side in ('left', 'right'):
            flat_module = regular_module(flat, side)
            self.assertTrue(check_cdg_module(flat_module).passed)
            report = check_cdg_module(regular_module(self.D, side))
            self.assertIn('curvature',
                          [f['axiom'] for f in report.failures])

    def test_hom_complex_identity_is_cycle(self):
        H = HomComplex(self.F, self.F)
        self.assertEqual(H.module.ranks(), {-1: 1, 0: 2, 1: 2, 2: 2, 3: 1})
        one = self.R.one
        identity = H.from_values({'u0': {('1', 'u0'): one},
                                  'u1': {('1', 'u1'): one}})
        self.assertEqual(H.d.apply(identity), {})
        self.assertEqual(H.evaluate(identity, ('z', 'u1')),
                         {('z', 'u1'): one})

    def test_hom_needs_free_source(self):
        M = regular_module(self.D)
        M.generators = None
        with self.assertRaises(ValueError):
            HomComplex(M, self.F)

    def test_tensor_over_B(self):
        flat = dual_numbers(self.R, 0)
        C = tensor_over_B(regular_module(flat, 'right'), regular_module(flat))
        self.assertEqual(C.module.ranks(), {0: 1, 2: 1})
        self.assertEqual(C.square_defect(), [])
        with self.assertRaises(ValueError):
            tensor_over_B(self.F, self.F)

    def test_g_plus_is_contractible(self):
        G = make_G_plus(regular_module(self.D))
        self.assertTrue(check_cdg_module(G).passed)
        s = g_plus_contraction(G)
        self.assertTrue(is_contracting_homotopy(G.d_map(), s))


class TestTwistAndRestrict(unittest.TestCase):
    """ Unit tests for twisted algebras and restriction of scalars """

    def setUp(self):
        """ R[z]/z^3 ⊗ Λ(y) with d(y) = z and h = e·z over F3[e]/e^2 """
        self.R = LocalRingSpec('eps', 3, 2)
        self.eps = self.R.uniformizer
        rng = np.random.default_rng(0)
        self.B = random_curved_algebra(self.R, rng, 3, True, 1, self.eps)
        self.a = {'y0': self.eps}
        self.Ba = twist_algebra(self.B, self.a)
        self.F = CdgMorphism(self.Ba, self.B,
                             {b: {b: self.R.one} for b in self.B.labels},
                             self.a, 'twist')

    def test_twisted_curvature(self):
        self.assertEqual(self.Ba.h, {'z1': 2 * self.eps})
        self.assertEqual(self.Ba.d['y1'], {'z2': self.R.one})
        self.assertTrue(check_cdg_algebra(self.Ba, weakly_curved=True).passed)

    def test_morphism(self):
        self.assertTrue(self.F.is_weakly_strict())
        self.assertTrue(check_cdg_morphism(self.F).passed)

    def test_restrict_scalars(self):
        M = random_factorization(self.B, self.eps, 1)
        N = restrict_scalars(self.F, M)
        self.assertIs(N.algebra, self.Ba)
        self.assertEqual(N.d[('z0', 'u0')],
                         {('z0', 'u1'): self.eps, ('y0', 'u0'): self.eps})
        self.assertTrue(check_cdg_module(N).passed)


if __name__ == '__main__':
    unittest.main()
