"""
Testing of barcobar.py module
"""

import unittest

from wcurve.barcobar import (TwistingCochain, adjunction_bijection, bar,
                             bar_functor, canonical_cochain_bar,
                             canonical_cochain_cobar, change_of_retraction,
                             change_of_section, check_twisting_cochain, cobar,
                             enumerate_twisting_cochains,
                             transport_along_algebra,
                             transport_along_coalgebra)
from wcurve.cdg import CdgAlgebra, check_cdg_algebra, check_cdg_morphism
from wcurve.coalgebra import (CdgCoalgebra, check_cdg_coalgebra,
                              check_coalgebra_morphism)
from wcurve.graded import GradedModule
from wcurve.ring import LocalRingSpec


def dual_numbers(ring, h):
    """R[z]/z^2 with |z| = 2 and curvature h·z."""
    one = ring.one
    module = GradedModule(ring, {'1': 0, 'z': 2})
    mult = {('1', '1'): {'1': one}, ('1', 'z'): {'z': one},
            ('z', '1'): {'z': one}, ('z', 'z'): {}}
    c = ring.element(h)
    return CdgAlgebra(module, '1', mult, {'1': {}, 'z': {}},
                      {'z': c} if c else {}, name='D')


def clifford_coalgebra(ring):
    """μ(e) = e⊗e + eps c⊗c and μ(c) = e⊗c + c⊗e, both in degree 0."""
    one = ring.one
    module = GradedModule(ring, {'e': 0, 'c': 0})
    comult = {'e': {('e', 'e'): one, ('c', 'c'): ring.uniformizer},
              'c': {('e', 'c'): one, ('c', 'e'): one}}
    return CdgCoalgebra(module, comult, {'e': 1}, {'e': {}, 'c': {}}, {},
                        name='C')


class TestBar(unittest.TestCase):
    """ Unit tests for the bar construction """

    def setUp(self):
        """ Bar of the dual numbers over F3[e]/e^2 with curvature e·z """
        self.R = LocalRingSpec('eps', 3, 2)
        self.D = dual_numbers(self.R, [0, 1])
        self.Br = bar(self.D, cap=2)

    def test_words(self):
        self.assertEqual(self.Br.module.ranks(), {0: 1, 1: 1, 2: 1})
        self.assertEqual(self.Br.counit_label, ())
        self.assertEqual(self.Br.letters, ['z'])

    def test_differential(self):
        self.assertEqual(self.Br.d[()], {('z',): self.R.uniformizer})
        self.assertEqual(self.Br.d[('z',)], {})
        self.assertNotIn(('z', 'z'), self.Br.d)

    def test_axioms(self):
        report = check_cdg_coalgebra(self.Br)
        self.assertTrue(report.passed)
        self.assertGreater(report.skipped, 0)

    def test_bad_retraction(self):
        with self.assertRaises(ValueError):
            bar(self.D, {'1': 2})
        with self.assertRaises(ValueError):
            bar(self.D, {'1': 1, 'z': 1})

    def test_canonical_cochain(self):
        tau = canonical_cochain_bar(self.Br)
        self.assertEqual(tau.apply({('z',): self.R.one}),
                         {'z': self.R.element(2)})
        self.assertTrue(check_twisting_cochain(tau).passed)


class TestCobar(unittest.TestCase):
    """ Unit tests for the cobar construction and twisting cochains """

    def setUp(self):
        """ Cobar of the Clifford coalgebra over F5[e]/e^2 """
        self.R = LocalRingSpec('eps', 5, 2)
        self.C = clifford_coalgebra(self.R)
        self.Cb = cobar(self.C, window=(0, 4), max_len=4)

    def test_words_and_curvature(self):
        self.assertEqual(self.Cb.module.ranks(),
                         {0: 1, 1: 1, 2: 1, 3: 1, 4: 1})
        self.assertEqual(self.Cb.h, {('c', 'c'): self.R.element([0, 4])})
        self.assertEqual(self.Cb.d[('c',)], {})

    def test_axioms(self):
        self.assertTrue(check_cdg_algebra(self.Cb, weakly_curved=True).passed)

    def test_window_must_contain_zero(self):
        with self.assertRaises(ValueError):
            cobar(self.C, window=(1, 3))

    def test_canonical_cochain(self):
        tau = canonical_cochain_cobar(self.C, self.Cb)
        self.assertEqual(tau.name, 'tau_C')
        self.assertTrue(check_twisting_cochain(tau).passed)

    def test_zero_cochain_fails(self):
        tau = TwistingCochain(self.C, self.Cb, {})
        report = check_twisting_cochain(tau)
        self.assertEqual([f['axiom'] for f in report.failures],
                         ['maurer_cartan'])
        self.assertEqual(report.failures[0]['witness'], 'e')


class TestAdjunction(unittest.TestCase):
    """ Unit tests for the enumeration of cochains and morphisms """

    def setUp(self):
        """ Clifford coalgebra and flat dual numbers over F2[e]/e^2 """
        self.R = LocalRingSpec('eps', 2, 2)
        self.C = clifford_coalgebra(self.R)
        self.D = dual_numbers(self.R, 0)

    def test_only_zero_cochain(self):
        taus = enumerate_twisting_cochains(self.C, self.D)
        self.assertEqual(len(taus), 1)
        self.assertEqual(taus[0].key(), ())

    def test_curved_target_has_no_cochain(self):
        curved = dual_numbers(self.R, [0, 1])
        self.assertEqual(enumerate_twisting_cochains(self.C, curved), [])

    def test_bijection_counts(self):
        report = adjunction_bijection(self.C, self.D, cap=2)
        self.assertTrue(report.passed)
        counts = {k: report.verified_range[k] for k in
                  ('cobar_morphisms', 'twisting_cochains', 'bar_morphisms')}
        self.assertDictEqual(counts, {'cobar_morphisms': 1,
                                      'twisting_cochains': 1,
                                      'bar_morphisms': 1})


def square_zero(ring):
    """R[x]/x^2 with |x| = 0, d = 0 and h = 0."""
    one = ring.one
    module = GradedModule(ring, {'1': 0, 'x': 0})
    mult = {('1', '1'): {'1': one}, ('1', 'x'): {'x': one},
            ('x', '1'): {'x': one}, ('x', 'x'): {}}
    return CdgAlgebra(module, '1', mult, {'1': {}, 'x': {}}, {}, name='X')


class TestChangeOfData(unittest.TestCase):
    """ Unit tests for changing retractions and sections """

    def setUp(self):
        """ R[x]/x^2 and the Clifford coalgebra over F5[e]/e^2 """
        self.R = LocalRingSpec('eps', 5, 2)
        self.eps = self.R.uniformizer
        self.X = square_zero(self.R)
        self.C = clifford_coalgebra(self.R)

    def test_change_of_retraction(self):
        v2 = {'1': 1, 'x': self.eps}
        Br1, Br2, G = change_of_retraction(self.X, None, v2, cap=2)
        self.assertEqual(Br1.d[('x', 'x')], {})
        self.assertEqual(Br2.d[('x', 'x')], {('x',): 2 * self.eps})
        self.assertEqual(G.a, {('x',): self.eps})
        self.assertTrue(check_coalgebra_morphism(G).passed)

    def test_transport_along_coalgebra(self):
        v2 = {'1': 1, 'x': self.eps}
        Br1, Br2, G = change_of_retraction(self.X, None, v2, cap=2)
        tau = transport_along_coalgebra(canonical_cochain_bar(Br2), G)
        self.assertEqual(tau.key(), canonical_cochain_bar(Br1).key())
        self.assertTrue(check_twisting_cochain(tau).passed)

    def test_change_of_section(self):
        w2 = {'e': 1, 'c': self.eps}
        Cb1, Cb2, F = change_of_section(self.C, {'e': 1}, w2, (0, 4), 4)
        self.assertEqual(Cb2.d[('c',)], {('c', 'c'): 2 * self.eps})
        self.assertEqual(Cb2.h, Cb1.h)
        self.assertEqual(F.a, {('c',): -self.eps})
        self.assertTrue(F.is_weakly_strict())
        self.assertTrue(check_cdg_morphism(F).passed)

    def test_transport_along_algebra(self):
        w2 = {'e': 1, 'c': self.eps}
        Cb1, Cb2, F = change_of_section(self.C, {'e': 1}, w2, (0, 4), 4)
        tau = transport_along_algebra(F, canonical_cochain_cobar(self.C, Cb1))
        self.assertEqual(tau.images,
                         canonical_cochain_cobar(self.C, Cb2).images)
        self.assertTrue(check_twisting_cochain(tau).passed)

    def test_bar_functor(self):
        D = dual_numbers(self.R, [0, 1])
        src, tgt, G = bar_functor(D, {}, cap=2)
        self.assertEqual(G.g[('z',)], {('z',): self.R.one})
        self.assertTrue(check_coalgebra_morphism(G).passed)
        with self.assertRaisesRegex(ValueError, r"\(id, a\)"):
            bar_functor(D, {'z': self.R.one})


if __name__ == '__main__':
    unittest.main()
