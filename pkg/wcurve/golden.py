"""
Module with builders for the worked examples and a small curved test
algebra, and the runners behind `wcurve examples run`.

clifford: C on e (the counit) and c in degree 0, Δe = e⊗e + t c⊗c,
    Δc = e⊗c + c⊗e. Then C* = R[y]/(y² = t) and Cb(C) = R[x], |x| = 1,
    with curvature -t x².
kln2: C on e in degree 0 and c in degree 1, Δc = e⊗c + c⊗e, d(e) = t c.
    Then C* = R[y]/(y²) with d(y) = t and Cb(C) = R[x], |x| = 2, with
    curvature -t x.
kln: B = S[x, x⁻¹], |x| = 2, h = εx over S with m_S² = 0, seen through
    B/mB → M → G⁺(B/mB) over the residue field.
"""

__all__ = [
    "TwistedPair",
    "KlnData",
    "EXAMPLES",
    "clifford_coalgebra",
    "clifford_pair",
    "kln2_coalgebra",
    "kln2_pair",
    "kln_data",
    "dual_numbers_curved",
    "run_example",
]

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Tuple

from wcurve.barcobar import (CobarAlgebra, TwistingCochain,
                             canonical_cochain_cobar, cobar)
from wcurve.cdg import (CdgAlgebra, CdgModule, HomComplex, make_G_plus,
                        regular_module)
from wcurve.coalgebra import (CdgCoalgebra, dual_algebra, regular_comodule,
                              star_action)
from wcurve.graded import GradedMap, GradedModule
from wcurve.homcalc import epsilon_nullhomotopy, ext, kln_vanishing_witness
from wcurve.reports import jsonable
from wcurve.ring import LocalRingSpec
from wcurve.twisted import module_from_comodule
from wcurve.vectors import Vector, subtract

logger = logging.getLogger(__name__)

EXAMPLES = ('clifford', 'kln', 'kln2')


def _default_ring(ring: Optional[LocalRingSpec]) -> LocalRingSpec:
    return LocalRingSpec('eps', 5, 2) if ring is None else ring


def _scalar(ring: LocalRingSpec, t):
    return ring.uniformizer if t is None else ring.element(t)


def clifford_coalgebra(ring: LocalRingSpec, t=None) -> CdgCoalgebra:
    """The two-dimensional coalgebra whose dual is R[y]/(y² = t)."""
    t = _scalar(ring, t)
    r1 = ring.one
    module = GradedModule(ring, {'e': 0, 'c': 0})
    comult = {'e': {('e', 'e'): r1}, 'c': {('e', 'c'): r1, ('c', 'e'): r1}}
    if t:
        comult['e'][('c', 'c')] = t
    return CdgCoalgebra(module, comult, {'e': 1}, {'e': {}, 'c': {}}, {},
                        'clifford')


def kln2_coalgebra(ring: LocalRingSpec, t=None) -> CdgCoalgebra:
    """The coalgebra dual to R[y]/(y²), |y| = -1, d(y) = t."""
    t = _scalar(ring, t)
    r1 = ring.one
    module = GradedModule(ring, {'e': 0, 'c': 1})
    comult = {'e': {('e', 'e'): r1}, 'c': {('e', 'c'): r1, ('c', 'e'): r1}}
    d = {'e': {'c': t} if t else {}, 'c': {}}
    return CdgCoalgebra(module, comult, {'e': 1}, d, {}, 'kln2')


@dataclass
class TwistedPair:
    """
    A = Cb(C), the module M = A⊗^τC and its Hom complex.

    Attributes:
        elements (dict): named degree-0 cycles of Hom_A(M, M)
        homotopy (Vector, optional): a Hom element with d = t·id
    """
    coalgebra: CdgCoalgebra
    algebra: CobarAlgebra
    tau: TwistingCochain
    module: CdgModule
    hom: HomComplex
    t: Any
    elements: Dict[str, Vector] = field(default_factory=dict)
    homotopy: Optional[Vector] = None


def _pair(C: CdgCoalgebra, t, window: Tuple[int, int]) -> TwistedPair:
    top = max(window[1] + 2, 2)
    A = cobar(C, window=(0, top), max_len=top)
    tau = canonical_cochain_cobar(C, A)
    M = module_from_comodule(tau, regular_comodule(C))
    H = HomComplex(M, M)
    r1 = C.ring.one
    identity = H.from_values({u: {(A.unit, u): r1} for u in M.generators})
    return TwistedPair(C, A, tau, M, H, t, {'1': identity})


def clifford_pair(ring: Optional[LocalRingSpec] = None, t=None,
                  window: Tuple[int, int] = (-3, 3)) -> TwistedPair:
    """
    The clifford pair with Y: e ↦ t·c, c ↦ e, the action of y ∈ C*;
    Y∘Y = t·id.
    """
    ring = _default_ring(ring)
    t = _scalar(ring, t)
    pair = _pair(clifford_coalgebra(ring, t), t, window)
    unit = pair.algebra.unit
    pair.elements['y'] = pair.hom.from_values({
        'e': {(unit, 'c'): t} if t else {},
        'c': {(unit, 'e'): ring.one}})
    return pair


def kln2_pair(ring: Optional[LocalRingSpec] = None, t=None,
              window: Tuple[int, int] = (-3, 3)) -> TwistedPair:
    """The kln2 pair with Y′: c ↦ e of degree -1 and d(Y′) = t·id."""
    ring = _default_ring(ring)
    t = _scalar(ring, t)
    pair = _pair(kln2_coalgebra(ring, t), t, window)
    pair.homotopy = pair.hom.from_values({
        'c': {(pair.algebra.unit, 'e'): ring.one}})
    return pair


@dataclass
class KlnData:
    """
    B/mB → M → G⁺(B/mB) over the residue field for B = S[x, x⁻¹].

    Labels of B/mB are the exponents j of x^j, |j| <= width. M has the
    basis ('u', j) for the lift of x^j, ('e', j) = ε('u', j) and
    ('w', j) = d('u', j); ε acts by ('u', j) ↦ ('e', j).
    """
    field: LocalRingSpec
    width: int
    algebra: CdgAlgebra
    quotient: CdgModule
    g_plus: CdgModule
    middle: GradedModule
    d_middle: GradedMap
    eps_middle: GradedMap
    x_middle: GradedMap
    inclusion: GradedMap
    projection: GradedMap
    homotopy: GradedMap
    x: int = 1


def kln_data(ring: Optional[LocalRingSpec] = None, width: int = 3) -> KlnData:
    """Build the exact triple and the homotopy b ↦ x⁻¹d_G(b)."""
    k = _default_ring(ring).residue_field()
    r1 = k.one
    js = range(-width, width + 1)
    base = GradedModule(k, {j: 2 * j for j in js}, (-2 * width, 2 * width),
                        True, True)
    mult = {(i, j): {i + j: r1} for i in js for j in js
            if -width <= i + j <= width}
    B = CdgAlgebra(base, 0, mult, {j: {} for j in js}, {}, 'k[x,1/x]')
    L = CdgModule(B, base, mult, {j: {} for j in js}, 'left', 'B/mB')
    G = make_G_plus(L)

    degrees = {}
    for j in js:
        degrees[('u', j)] = 2 * j
        degrees[('e', j)] = 2 * j
        degrees[('w', j)] = 2 * j + 1
    middle = GradedModule(k, degrees, (-2 * width, 2 * width + 1), True, True)
    d, eps, x, xinv = {}, {}, {}, {}
    for j in js:
        d[('u', j)] = {('w', j): r1}
        d[('e', j)] = {}
        if j + 1 <= width:
            d[('w', j)] = {('e', j + 1): r1}
        eps[('u', j)] = {('e', j): r1}
        eps[('e', j)] = {}
        eps[('w', j)] = {}
        for tag in ('u', 'e', 'w'):
            if j + 1 <= width:
                x[(tag, j)] = {(tag, j + 1): r1}
            if j - 1 >= -width:
                xinv[(tag, j)] = {(tag, j - 1): r1}
    d_middle = GradedMap(middle, middle, 1, d)
    x_inverse = GradedMap(middle, middle, -2, xinv)
    lift = GradedMap(base, middle, 0, {j: {('u', j): r1} for j in js})
    inclusion = GradedMap(base, middle, 0, {j: {('e', j): r1} for j in js})
    projection = GradedMap(middle, G.module, 0, {
        lab: ({} if lab[0] == 'e' else {lab: r1}) for lab in degrees})
    homotopy = x_inverse.compose(d_middle.compose(lift))
    logger.debug('kln data over %s: width %d', k.label, width)
    return KlnData(k, width, B, L, G, middle, d_middle,
                   GradedMap(middle, middle, 0, eps),
                   GradedMap(middle, middle, 2, x), inclusion, projection,
                   homotopy)


def dual_numbers_curved(ring: LocalRingSpec, t=None) -> CdgAlgebra:
    """R⊕Rz, |z| = 2, z² = 0, d = 0, h = t·z (t = ε by default)."""
    t = _scalar(ring, t)
    r1 = ring.one
    module = GradedModule(ring, {'1': 0, 'z': 2})
    mult = {('1', '1'): {'1': r1}, ('1', 'z'): {'z': r1},
            ('z', '1'): {'z': r1}, ('z', 'z'): {}}
    return CdgAlgebra(module, '1', mult, {'1': {}, 'z': {}},
                      {'z': t} if t else {}, 'dual_numbers')


def _clifford(ring, window, cap) -> Dict[str, Any]:
    pair = clifford_pair(ring, window=window)
    report = ext(pair.module, pair.module, window, cycles=pair.elements)
    N = ring.N
    square = report.ring_table['y*y']
    others = all(not g.factors for n, g in report.groups.items()
                 if n != 0 and g.reliable)
    passed = (report.factors(0) == [N, N] and others
              and square == {'1': pair.t, 'y': ring.zero})
    return {'ext': report.to_dict(), 'cobar_curvature': jsonable(
        pair.algebra.h), 'passed': passed}


def _kln2(ring, window, cap) -> Dict[str, Any]:
    pair = kln2_pair(ring, window=window)
    H = pair.hom
    identity = pair.elements['1']
    defect = subtract(H.d.apply(pair.homotopy),
                      {k: pair.t * c for k, c in identity.items()})
    dual = dual_algebra(pair.coalgebra)
    checks = {}
    for M in (regular_module(dual), star_action(regular_comodule(
            pair.coalgebra), dual)):
        _, rep = epsilon_nullhomotopy(M, 'c', pair.t)
        checks[M.name] = rep.to_dict()
    report = ext(pair.module, pair.module, window)
    passed = (not defect and report.exponent() <= 1
              and all(c['passed'] for c in checks.values()))
    return {'ext': report.to_dict(), 'hom_homotopy_defect': jsonable(defect),
            'nullhomotopies': checks, 'exponent': report.exponent(),
            'cobar_curvature': jsonable(pair.algebra.h), 'passed': passed}


def _kln(ring, window, cap) -> Dict[str, Any]:
    report = kln_vanishing_witness(kln_data(ring, max(cap, 2)))
    return {'witness': report.to_dict(), 'passed': report.passed}


def run_example(name: str, ring: Optional[LocalRingSpec] = None,
                window: Tuple[int, int] = (-3, 3), cap: int = 3
                ) -> Dict[str, Any]:
    """
    Run one worked example and return its JSON payload.

    Raises:
        ValueError: if the example is unknown
    """
    runners = {'clifford': _clifford, 'kln': _kln, 'kln2': _kln2}
    if name not in runners:
        raise ValueError(f'unknown example {name!r}; choose from {EXAMPLES}')
    ring = _default_ring(ring)
    payload = {'example': name, 'ring': ring.to_json()['ring'],
               'window': list(window)}
    payload.update(runners[name](ring, window, cap))
    logger.info('example %s: passed=%s', name, payload['passed'])
    return payload
