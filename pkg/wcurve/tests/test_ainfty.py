"""
Testing of ainfty.py module
"""

import unittest

from wcurve.ainfty import (AinftyAlgebra, AinftyMorphism, StrictUnitWitness,
                           bar_of_strictly_unital, check_module,
                           check_morphism, check_stasheff, check_strict_unit,
                           coalgebra_map, components_of,
                           enveloping_wcdg, from_cdg,
                           from_cdg_module, from_cdg_morphism,
                           stasheff_oracle)
from wcurve.barcobar import bar, change_of_retraction
from wcurve.cdg import (CdgAlgebra, CdgMorphism, check_cdg_algebra,
                        free_module, regular_module)
from wcurve.coalgebra import (CoalgebraMorphism, check_cdg_coalgebra,
                              check_coalgebra_morphism)
from wcurve.errors import NotWeaklyCurved
from wcurve.graded import FreeComplex, GradedModule, homology_mod_m
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


def square_zero(ring):
    """R[x]/x^2 with |x| = 0, d = 0 and h = 0."""
    one = ring.one
    module = GradedModule(ring, {'1': 0, 'x': 0})
    mult = {('1', '1'): {'1': one}, ('1', 'x'): {'x': one},
            ('x', '1'): {'x': one}, ('x', 'x'): {}}
    return CdgAlgebra(module, '1', mult, {'1': {}, 'x': {}}, {}, name='X')


class TestAinftyAlgebra(unittest.TestCase):
    """ Unit tests for AinftyAlgebra and the Stasheff checks """

    def setUp(self):
        """ Curved dual numbers over F3[e]/e^2 as an A∞-algebra """
        self.R = LocalRingSpec('eps', 3, 2)
        self.D = dual_numbers(self.R, [0, 1])
        self.A = from_cdg(self.D)
        self.module = self.D.module

    def test_from_cdg(self):
        self.assertEqual(self.A.weight_cap, 4)
        self.assertEqual(self.A.curvature, {'z': self.R.element([0, 1])})
        self.assertEqual(self.A.m(('z', '1')), {'z': self.R.one})
        self.assertEqual(self.A.m(('1', 'z', 'z')), {})
        self.assertEqual(from_cdg(self.D, 1).weight_cap, 2)

    def test_shifted_signs(self):
        self.assertEqual(self.A.b(()), {'z': self.R.element([0, 1])})
        self.assertEqual(self.A.b(('z', '1')), {'z': -self.R.one})

    def test_stasheff_holds(self):
        report = check_stasheff(self.A)
        self.assertTrue(report.passed)
        self.assertEqual(report.checked, 31)
        self.assertEqual(report.skipped, 0)
        self.assertEqual(report.verified_range['weights'], [0, 4])
        self.assertListEqual(stasheff_oracle(self.A), [])

    def test_stasheff_fails(self):
        self.A.ops[2][('z', '1')] = {'z': self.R.element(2)}
        report = check_stasheff(self.A)
        self.assertFalse(report.passed)
        witnesses = [f['witness'] for f in report.failures
                     if f['axiom'] == 'stasheff_3']
        self.assertIn(['z', '1', '1'], witnesses)
        self.assertIn(('z', '1', '1'), stasheff_oracle(self.A))

    def test_higher_operation(self):
        R = LocalRingSpec('eps', 3, 2)
        module = GradedModule(R, {'z': -1, 'a': 0})
        A = AinftyAlgebra(module, {3: {('a', 'a', 'a'): {'z': 1}}},
                          weight_cap=3, name='T')
        self.assertEqual(A.m(('a', 'a', 'a')), {'z': R.one})
        self.assertTrue(check_stasheff(A).passed)
        self.assertListEqual(stasheff_oracle(A), [])
        A = AinftyAlgebra(module, {1: {('z',): {'a': R.uniformizer}},
                                   3: {('a', 'a', 'a'): {'z': 1}}},
                          weight_cap=3, name='T~')
        report = check_stasheff(A)
        self.assertFalse(report.passed)
        self.assertSetEqual({f['axiom'] for f in report.failures},
                            {'stasheff_3'})
        oracle = stasheff_oracle(A)
        self.assertIn(('a', 'a', 'a'), oracle)
        self.assertSetEqual({tuple(f['witness']) for f in report.failures},
                            set(oracle))

    def test_invalid_tables(self):
        with self.assertRaises(ValueError):
            AinftyAlgebra(self.module, {2: {('1',): {'1': 1}}})
        with self.assertRaises(ValueError):
            AinftyAlgebra(self.module, {2: {('1', 'q'): {}}})
        with self.assertRaises(ValueError):
            AinftyAlgebra(self.module, {2: {('1', 'z'): {'1': 1}}})
        with self.assertRaises(ValueError):
            AinftyAlgebra(self.module, {-1: {}})

    def test_strong_curvature(self):
        with self.assertRaises(NotWeaklyCurved):
            AinftyAlgebra(self.module, {0: {(): {'z': 1}}})

    def test_to_json(self):
        data = self.A.to_json()
        self.assertEqual(data['name'], 'D')
        self.assertEqual(data['ops']['0'], [[[], {'z': [0, 1]}]])


class TestAinftyMorphism(unittest.TestCase):
    """ Unit tests for AinftyMorphism and check_morphism """

    def setUp(self):
        """ Identity of the curved dual numbers """
        self.R = LocalRingSpec('eps', 3, 2)
        self.D = dual_numbers(self.R, [0, 1])
        self.A = from_cdg(self.D)

    def test_identity(self):
        F = AinftyMorphism.identity(self.A)
        report = check_morphism(F)
        self.assertTrue(report.passed)
        self.assertGreater(report.checked, 0)

    def test_from_cdg_morphism(self):
        F = from_cdg_morphism(CdgMorphism.identity(self.D))
        self.assertEqual(F.f(()), {})
        self.assertTrue(check_morphism(F).passed)

    def test_coalgebra_map(self):
        F = AinftyMorphism.identity(self.A)
        self.assertEqual(coalgebra_map(F, ('z', '1'), 2),
                         {('z', '1'): self.R.one})
        self.assertEqual(coalgebra_map(F, (), 2), {(): self.R.one})
        G = components_of(self.A, self.A,
                          lambda w: coalgebra_map(F, w, 2), 2)
        self.assertEqual(G.components[1], F.components[1])
        self.assertEqual(G.components[2], {})

    def test_wrong_degree(self):
        with self.assertRaises(ValueError):
            AinftyMorphism(self.A, self.A, {0: {(): {'z': 1}}})
        with self.assertRaises(ValueError):
            AinftyMorphism(self.A, self.A, {1: {('z', 'z'): {'z': 1}}})


class TestAinftyModule(unittest.TestCase):
    """ Unit tests for AinftyModule and check_module """

    def setUp(self):
        """ Dual numbers over F3[e]/e^2, flat and curved """
        self.R = LocalRingSpec('eps', 3, 2)
        self.flat = dual_numbers(self.R, 0)
        self.curved = dual_numbers(self.R, [0, 1])

    def test_regular_module(self):
        M = from_cdg_module(regular_module(self.flat))
        report = check_module(M)
        self.assertTrue(report.passed)
        self.assertEqual(report.skipped, 0)

    def test_curved_free_module(self):
        eps = self.R.element([0, 1])
        F = free_module(self.curved, {'u0': 0, 'u1': 1},
                        {'u0': {('1', 'u1'): eps},
                         'u1': {('z', 'u0'): self.R.one}})
        report = check_module(from_cdg_module(F))
        self.assertTrue(report.passed)

    def test_right_modules_unsupported(self):
        with self.assertRaises(NotImplementedError):
            from_cdg_module(regular_module(self.flat, 'right'))


class TestStrictUnit(unittest.TestCase):
    """ Unit tests for check_strict_unit and bar_of_strictly_unital """

    def setUp(self):
        """ Curved dual numbers with unit '1' """
        self.R = LocalRingSpec('eps', 3, 2)
        self.D = dual_numbers(self.R, [0, 1])
        self.A = from_cdg(self.D)
        self.witness = StrictUnitWitness('1')

    def test_unit_is_strict(self):
        report = check_strict_unit(self.A, self.witness)
        self.assertTrue(report.passed)
        self.assertEqual(report.verified_range['weights'], [1, 4])

    def test_broken_unit(self):
        self.A.ops[2][('z', '1')] = {'z': self.R.element(2)}
        report = check_strict_unit(self.A, self.witness)
        axioms = {f['axiom'] for f in report.failures}
        self.assertSetEqual(axioms, {'unit_direct', 'unit_kernel'})
        self.assertIn(['z', '1'], [f['witness'] for f in report.failures])

    def test_bad_witness(self):
        with self.assertRaises(ValueError):
            check_strict_unit(self.A, StrictUnitWitness('z'))
        with self.assertRaises(ValueError):
            check_strict_unit(self.A, StrictUnitWitness('1', {'1': 2}))

    def test_bar_agrees_with_cdg_bar(self):
        Br = bar_of_strictly_unital(self.A, self.witness, cap=2)
        self.assertEqual(Br.d[()], {('z',): self.R.element([0, 1])})
        self.assertEqual(Br.d[()], bar(self.D, cap=2).d[()])
        self.assertNotIn(('z', 'z'), Br.d)
        self.assertEqual(Br.h, {})

    def test_enveloping_algebra(self):
        U, F = enveloping_wcdg(self.A, self.witness, window=(0, 4),
                               max_len=3, cap=2)
        self.assertEqual(U.unit, ())
        self.assertEqual(set(U.h), {(('z',),)})
        self.assertEqual(set(F.f(('1',))), {()})
        self.assertEqual(set(F.f(('z',))), {(('z',),)})
        self.assertTrue(F.truncated)


class TestUnitalConstructions(unittest.TestCase):
    """ Unit tests for bar_of_strictly_unital and enveloping_wcdg """

    def setUp(self):
        """ Curved dual numbers over F3[e]/e^2, m_n = 0 for n >= 3 """
        self.R = LocalRingSpec('eps', 3, 2)
        self.D = dual_numbers(self.R, [0, 1])
        self.A = from_cdg(self.D)
        self.witness = StrictUnitWitness('1')

    def test_bar_is_cdg_coalgebra(self):
        Br = bar_of_strictly_unital(self.A, self.witness, cap=3)
        self.assertTrue(check_cdg_coalgebra(Br).passed)
        cdg_bar = bar(self.D, cap=3)
        self.assertEqual(Br.labels, cdg_bar.labels)
        for w, vec in Br.d.items():
            self.assertEqual(vec, cdg_bar.d[w], w)
        self.assertEqual(Br.h, cdg_bar.h)

    def test_enveloping_algebra_axioms(self):
        U, F = enveloping_wcdg(self.A, self.witness, window=(0, 4),
                               max_len=3, cap=3)
        self.assertTrue(check_cdg_algebra(U, weakly_curved=True).passed)
        self.assertTrue(check_morphism(F).passed)

    def test_residue_homology(self):
        U, _ = enveloping_wcdg(self.A, self.witness, window=(0, 4),
                               max_len=3, cap=3)
        dims = {}
        for B in (self.D, U):
            C = FreeComplex(B.module, B.d_map(), check=False)
            dims[B.name] = {n: v['dim']
                            for n, v in homology_mod_m(C, (0, 3)).items()}
        self.assertDictEqual(dims[self.D.name], {0: 1, 1: 0, 2: 1, 3: 0})
        self.assertDictEqual(dims[U.name], dims[self.D.name])

    def test_ground_ring(self):
        one = self.R.one
        ground = CdgAlgebra(GradedModule(self.R, {'1': 0}), '1',
                            {('1', '1'): {'1': one}}, {'1': {}}, {},
                            name='R')
        A = from_cdg(ground)
        Br = bar_of_strictly_unital(A, self.witness, cap=3)
        self.assertEqual(Br.labels, ((),))
        self.assertFalse(any(Br.d.values()))
        self.assertEqual(Br.h, {})
        U, F = enveloping_wcdg(A, self.witness, window=(0, 4), max_len=3,
                               cap=3)
        self.assertEqual(U.labels, ((),))
        self.assertEqual(U.h, {})
        self.assertEqual(U.mult[((), ())], {(): one})
        self.assertEqual(set(F.f(('1',))), {()})

    def test_change_of_retraction(self):
        eps = self.R.uniformizer
        X = square_zero(self.R)
        A = from_cdg(X)
        v2 = {'1': 1, 'x': eps}
        Br1 = bar_of_strictly_unital(A, self.witness, cap=2)
        Br2 = bar_of_strictly_unital(A, StrictUnitWitness('1', v2), cap=2)
        self.assertEqual(Br2.d[('x', 'x')], {('x',): 2 * eps})
        cdg1, cdg2, G = change_of_retraction(X, None, v2, cap=2)
        self.assertEqual(Br1.d, cdg1.d)
        self.assertEqual(Br2.d, cdg2.d)
        self.assertEqual(Br2.h, cdg2.h)
        iso = CoalgebraMorphism(Br1, Br2, G.g, G.a, 'retraction_change')
        self.assertTrue(check_coalgebra_morphism(iso).passed)


if __name__ == '__main__':
    unittest.main()
