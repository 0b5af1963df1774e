"""
Module with the randomized property suites run by `wcurve selftest`.

Every suite draws its structures from a seeded numpy Generator and returns
an AxiomReport; `verified_range` records how many cases were drawn. The
random curved algebras are

    B = R[z]/(z^k) ⊗ Λ(y),  |z| = 2, |y| = 1,  d(y) = c z,  h = a z,

with a in m, together with the two-generator factorization module
d(u₀) = p u₁, d(u₁) = q z u₀, pq = a.
"""

__all__ = [
    "SUITES",
    "CurvedSample",
    "random_curved_algebra",
    "random_factorization",
    "random_invertible",
    "axiom_suite",
    "nakayama_suite",
    "adjunction_suite",
    "stasheff_suite",
    "idempotent_suite",
    "rmod_suite",
    "telescope_suite",
    "run_selftest",
]

import logging
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from wcurve import linalg
from wcurve.ainfty import (AinftyAlgebra, check_stasheff, from_cdg,
                           stasheff_oracle)
from wcurve.barcobar import adjunction_bijection, bar
from wcurve.cdg import (CdgAlgebra, CdgModule, HomComplex, check_cdg_algebra,
                        check_cdg_module, free_module, regular_module,
                        tensor_over_B)
from wcurve.coalgebra import check_cdg_coalgebra
from wcurve.errors import (EnumerationBudgetExceeded, NotAUnit,
                           SNotTopologicallyNilpotent)
from wcurve.golden import (clifford_coalgebra, dual_numbers_curved,
                           kln2_coalgebra)
from wcurve.graded import (FreeComplex, GradedMap, GradedModule,
                           find_homotopy, homology_mod_m,
                           homotopy_by_linear_solve, is_contracting_homotopy)
from wcurve.reports import AxiomReport
from wcurve.ring import LocalRingSpec, idempotent_lift, telescope_solve
from wcurve.rmod import (FgModule, adjunction_counts, assoc_checks,
                         phi_psi_roundtrip, smith_decompose, tensor,
                         tensor_presentation)
from wcurve.vectors import scale

logger = logging.getLogger(__name__)

DEFAULT_RINGS = (LocalRingSpec('eps', 2, 2), LocalRingSpec('eps', 5, 2),
                 LocalRingSpec('eps', 2, 3), LocalRingSpec('eps', 5, 3))


def _pick(rng: np.random.Generator, items: Sequence):
    return items[int(rng.integers(len(items)))]


@dataclass
class CurvedSample:
    """A random curved algebra with its factorization module."""
    algebra: CdgAlgebra
    module: CdgModule
    c: object
    p: object
    q: object
    order: int
    odd: bool


def random_curved_algebra(ring: LocalRingSpec, rng: np.random.Generator,
                          order: int = 3, odd: bool = True,
                          c=None, a=None) -> CdgAlgebra:
    """
    R[z]/(z^order) (⊗ Λ(y) when `odd`) with d(y) = c z and h = a z.

    Labels are 'z<i>' for z^i and 'y<i>' for y z^i; 'z0' is the unit.
    """
    if order < 2:
        raise ValueError('the curved test algebra needs order >= 2')
    if ring.N < 2:
        raise ValueError('a curved sample needs N >= 2')
    r1 = ring.one
    c = ring.random_unit(rng) if c is None else ring.element(c)
    a = ring.random_element(rng, 1) if a is None else ring.element(a)
    degrees = {f'z{i}': 2 * i for i in range(order)}
    if odd:
        degrees.update({f'y{i}': 2 * i + 1 for i in range(order)})
    module = GradedModule(ring, degrees)

    def z(i):
        return {f'z{i}': r1} if i < order else {}

    def y(i):
        return {f'y{i}': r1} if i < order else {}

    mult, d = {}, {}
    for i in range(order):
        d[f'z{i}'] = {}
        for j in range(order):
            mult[(f'z{i}', f'z{j}')] = z(i + j)
            if odd:
                mult[(f'z{i}', f'y{j}')] = y(i + j)
                mult[(f'y{i}', f'z{j}')] = y(i + j)
                mult[(f'y{i}', f'y{j}')] = {}
        if odd:
            d[f'y{i}'] = scale(z(i + 1), c)
    h = {'z1': a} if a else {}
    return CdgAlgebra(module, 'z0', mult, d, h, 'curved_sample')


def random_factorization(B: CdgAlgebra, p, q, name: str = 'F') -> CdgModule:
    """The free module on u₀ (degree 0) and u₁ (degree 1) with d² = pq z."""
    gens = {'u0': 0, 'u1': 1}
    d_gen = {'u0': {('z0', 'u1'): p} if p else {},
             'u1': {('z1', 'u0'): q} if q else {}}
    return free_module(B, gens, d_gen, 'left', name)


def _curved_sample(ring: LocalRingSpec, rng: np.random.Generator,
                   order: Optional[int] = None,
                   odd: Optional[bool] = None) -> CurvedSample:
    order = int(rng.integers(2, 4)) if order is None else order
    odd = bool(rng.integers(2)) if odd is None else odd
    p = ring.uniformizer * ring.random_unit(rng)
    q = ring.random_unit(rng)
    c = ring.random_unit(rng)
    B = random_curved_algebra(ring, rng, order, odd, c, p * q)
    return CurvedSample(B, random_factorization(B, p, q), c, p, q, order, odd)


def _corruptions(sample: CurvedSample) -> List[Tuple[str, Callable[[], AxiomReport]]]:
    """Single sign flips that the axiom checkers must notice."""
    B, ring = sample.algebra, sample.algebra.ring
    out = []
    if ring.p == 2:
        return out
    out.append(('module_d_u0', lambda: check_cdg_module(
        random_factorization(B, -sample.p, sample.q, 'F~'))))
    out.append(('module_d_u1', lambda: check_cdg_module(
        random_factorization(B, sample.p, -sample.q, 'F~'))))
    if sample.odd and sample.order >= 3:
        d = dict(B.d)
        d['y0'] = scale(d['y0'], -1)
        bad = CdgAlgebra(B.module, B.unit, B.mult, d, B.h, 'curved_sample~')
        out.append(('algebra_d_y0', lambda: check_cdg_algebra(bad)))
    return out


def axiom_suite(rng: np.random.Generator, count: int = 200,
                rings: Sequence[LocalRingSpec] = DEFAULT_RINGS,
                cap: int = 3) -> AxiomReport:
    """
    Random curved algebras and modules: the axioms hold, the bar
    construction is a CDG-coalgebra, Hom and tensor complexes square to
    zero, and every injected sign flip is caught.
    """
    rep = AxiomReport('selftest:axioms')
    injected = detected = 0
    for trial in range(count):
        sample = _curved_sample(_pick(rng, rings), rng)
        B, F = sample.algebra, sample.module
        witness = {'trial': trial, 'ring': B.ring.label,
                   'order': sample.order, 'odd': sample.odd}
        for sub in (check_cdg_algebra(B, weakly_curved=True),
                    check_cdg_module(F),
                    check_cdg_coalgebra(bar(B, cap=cap))):
            if not sub.passed:
                rep.fail(sub.subject, witness, sub.failures[0])
            else:
                rep.ok()
        hom = HomComplex(F, F, check=False).complex
        if hom.square_defect():
            rep.fail('hom_square', witness, hom.square_defect()[0][1])
        else:
            rep.ok()
        try:
            defect = tensor_over_B(regular_module(B, 'right'),
                                   F).square_defect()
        except ValueError as e:
            defect = str(e)
        if defect:
            rep.fail('tensor_square', witness, defect)
        else:
            rep.ok()
        for what, check in _corruptions(sample):
            injected += 1
            if check().passed:
                rep.fail('corruption_undetected', {**witness, 'flip': what})
            else:
                detected += 1
                rep.ok()
    rep.verified_range.update({'cases': count, 'injected': injected,
                               'detected': detected, 'bar_cap': cap})
    return rep


def random_invertible(ring: LocalRingSpec, n: int,
                      rng: np.random.Generator) -> np.ndarray:
    """A random n x n matrix with invertible residue."""
    while True:
        A = linalg.from_rows(ring, [[ring.random_element(rng)
                                     for _ in range(n)] for _ in range(n)],
                             n)
        try:
            linalg.inverse(A, ring)
        except NotAUnit:
            continue
        return A


def _random_complex(ring: LocalRingSpec, rng: np.random.Generator,
                    acyclic: bool, max_blocks: int = 3) -> FreeComplex:
    """
    A sum of elementary complexes R --a--> R in degrees (0, 1) or (1, 2),
    conjugated by random changes of basis in each degree.
    """
    blocks = []
    for _ in range(int(rng.integers(1, max_blocks + 1))):
        start = int(rng.integers(2))
        a = ring.random_unit(rng) if acyclic else ring.random_element(rng)
        blocks.append((start, a))
    if not acyclic and all(a.valuation() == 0 for _, a in blocks):
        start, _ = blocks[0]
        blocks[0] = (start, ring.random_element(rng, 1))
    degrees = {}
    for i, (start, _) in enumerate(blocks):
        degrees[('s', i)] = start
        degrees[('t', i)] = start + 1
    module = GradedModule(ring, degrees)
    images = {lab: {} for lab in module.labels}
    for i, (_, a) in enumerate(blocks):
        if a:
            images[('s', i)] = {('t', i): a}
    d = GradedMap(module, module, 1, images)
    change = {n: random_invertible(ring, module.rank(n), rng)
              for n in module.support()}
    conjugated = {}
    for n in module.support():
        if module.rank(n + 1):
            D = d.block(n)
            conjugated[n] = linalg.matmul(
                linalg.matmul(change[n + 1], D, ring),
                linalg.inverse(change[n], ring), ring)
    return FreeComplex(module, GradedMap.from_blocks(module, module, 1,
                                                     conjugated))


def nakayama_suite(rng: np.random.Generator, count: int = 200,
                   rings: Sequence[LocalRingSpec] = DEFAULT_RINGS
                   ) -> AxiomReport:
    """
    `count` residue-acyclic and `count` residue-non-acyclic complexes:
    contractibility decided through the residue field agrees with a
    linear solve of ds + sd = id over R, and both homotopies verify.
    """
    rep = AxiomReport('selftest:nakayama')
    for trial in range(2 * count):
        acyclic = trial < count
        ring = _pick(rng, rings)
        C = _random_complex(ring, rng, acyclic)
        witness = {'trial': trial, 'ring': ring.label, 'acyclic': acyclic}
        s = find_homotopy(C)
        oracle = homotopy_by_linear_solve(C.module, C.d)
        residue_acyclic = all(v['dim'] == 0
                              for v in homology_mod_m(C).values())
        if residue_acyclic != acyclic:
            rep.fail('residue_homology', witness)
        elif (s is None) == acyclic or (oracle is None) == acyclic:
            rep.fail('oracle_disagrees', {**witness, 'found': s is not None,
                                          'oracle': oracle is not None})
        elif acyclic and not (is_contracting_homotopy(C.d, s) and
                              is_contracting_homotopy(C.d, oracle)):
            rep.fail('homotopy_invalid', witness)
        else:
            rep.ok()
    rep.verified_range['cases'] = 2 * count
    return rep


def adjunction_suite(rng: Optional[np.random.Generator] = None,
                     count: Optional[int] = None, budget: int = 200000
                     ) -> AxiomReport:
    """
    Exhaustive bar/cobar adjunction over F₂[ε]/ε² on the small coalgebras
    and algebras of the worked examples, weight cap 2.
    """
    ring = LocalRingSpec('eps', 2, 2)
    eps = ring.uniformizer
    coalgebras = [clifford_coalgebra(ring, 0), clifford_coalgebra(ring, eps),
                  kln2_coalgebra(ring, 0), kln2_coalgebra(ring, eps)]
    algebras = [dual_numbers_curved(ring, 0), dual_numbers_curved(ring, eps)]
    pairs = [(C, A) for C in coalgebras for A in algebras]
    if count is not None:
        pairs = pairs[:count]
    rep = AxiomReport('selftest:adjunction')
    sizes = []
    for C, A in pairs:
        try:
            sub = adjunction_bijection(C, A, cap=2, budget=budget)
        except EnumerationBudgetExceeded:
            rep.skip()
            continue
        sizes.append(sub.verified_range)
        rep = rep.merge(sub, rep.subject)
    rep.verified_range = {'pairs': len(pairs), 'sizes': sizes}
    return rep


def _perturbed(A: AinftyAlgebra, rng: np.random.Generator) -> AinftyAlgebra:
    ring = A.ring
    words = sorted((w for w, v in A.ops.get(2, {}).items() if v), key=repr)
    ops = {n: dict(table) for n, table in A.ops.items()}
    if words:
        w = _pick(rng, words)
        u = ring.random_unit(rng)
        while u == ring.one:
            u = ring.random_unit(rng)
        ops[2][w] = scale(ops[2][w], u)
    return AinftyAlgebra(A.module, ops, A.weight_cap, A.name + '~',
                         A.partial)


def _with_random_m3(A: AinftyAlgebra, rng: np.random.Generator,
                    entries: int = 2) -> AinftyAlgebra:
    ring = A.ring
    by_degree: Dict[int, List] = {}
    for a in A.labels:
        by_degree.setdefault(A.degree(a), []).append(a)
    words = [w for w in A.words(3)
             if sum(A.degree(a) for a in w) - 1 in by_degree]
    if not words:
        return A
    ops = {n: dict(table) for n, table in A.ops.items()}
    table = ops.setdefault(3, {})
    for _ in range(entries):
        w = _pick(rng, words)
        target = _pick(rng, by_degree[sum(A.degree(a) for a in w) - 1])
        table[w] = {target: ring.random_element(rng)}
    return AinftyAlgebra(A.module, ops, max(A.weight_cap, 3), A.name + '+m3',
                         A.partial)


def stasheff_suite(rng: np.random.Generator, count: int = 100,
                   rings: Sequence[LocalRingSpec] = DEFAULT_RINGS,
                   cap: int = 4, order: Optional[int] = None
                   ) -> AxiomReport:
    """
    The weight-capped Stasheff checker and the full coderivation-squared
    expansion agree on accepted and perturbed candidates alike. Every third
    candidate has odd generators too and carries a random m_3 table on top
    of its wcDG operations.
    """
    rep = AxiomReport('selftest:stasheff')
    accepted = rejected = 0
    for trial in range(count):
        sample = _curved_sample(_pick(rng, rings), rng, order,
                                odd=trial % 3 == 2)
        A = from_cdg(sample.algebra, cap)
        if trial % 3 == 1:
            A = _perturbed(A, rng)
        elif trial % 3 == 2:
            A = _with_random_m3(A, rng)
        checked = check_stasheff(A).passed
        oracle = not stasheff_oracle(A)
        if checked != oracle:
            rep.fail('checker_disagrees', {'trial': trial, 'checker': checked,
                                           'oracle': oracle})
        else:
            rep.ok()
        accepted += checked
        rejected += not checked
    rep.verified_range.update({'cases': count, 'accepted': accepted,
                               'rejected': rejected, 'weight_cap': cap})
    return rep


def idempotent_suite(rng: np.random.Generator, count: int = 100,
                     size: int = 3, max_N: int = 4) -> AxiomReport:
    """Approximate idempotents lift to exact ones that commute with a."""
    rep = AxiomReport('selftest:idempotents')
    for trial in range(count):
        ring = LocalRingSpec('eps', _pick(rng, (2, 3, 5)),
                             int(rng.integers(1, max_N + 1)))
        g = random_invertible(ring, size, rng)
        P = linalg.zeros(ring, size, size)
        for i in range(size):
            if rng.integers(2):
                P[i, i] = ring.one
        a = linalg.matmul(linalg.matmul(g, P, ring), linalg.inverse(g, ring),
                          ring)
        noise = linalg.from_rows(ring, [[ring.random_element(rng, 1)
                                         for _ in range(size)]
                                        for _ in range(size)], size)
        a = a + noise
        e = idempotent_lift(a)
        witness = {'trial': trial, 'ring': ring.label}
        if not linalg.equal(linalg.matmul(e, e, ring), e):
            rep.fail('idempotent', witness)
        elif not linalg.equal(linalg.residue_matrix(e, ring),
                              linalg.residue_matrix(a, ring)):
            rep.fail('congruent_mod_m', witness)
        elif not linalg.equal(linalg.matmul(e, a, ring),
                              linalg.matmul(a, e, ring)):
            rep.fail('commutes_with_a', witness)
        else:
            rep.ok()
    rep.verified_range['cases'] = count
    return rep


def _random_fg(ring: LocalRingSpec, rng: np.random.Generator,
               max_length: int = 3) -> FgModule:
    factors = []
    while True:
        k = int(rng.integers(1, ring.N + 1))
        if sum(factors) + k > max_length or rng.integers(3) == 0:
            break
        factors.append(k)
    return FgModule(ring, tuple(factors))


def rmod_suite(rng: np.random.Generator, count: int = 30,
               budget: int = 200000) -> AxiomReport:
    """
    Adjunction counts, Φ/Ψ round trips, tensor products read off their
    Kronecker presentation and the associativity morphisms.
    """
    ring = LocalRingSpec('eps', 2, 2)
    rep = AxiomReport('selftest:rmod')
    for trial in range(count):
        P, M, N = (_random_fg(ring, rng) for _ in range(3))
        witness = {'trial': trial, 'P': P.factors, 'M': M.factors,
                   'N': N.factors}
        counts = adjunction_counts(P, M, N, budget)
        if counts['left'] != counts['right'] or not counts['bijective']:
            rep.fail('adjunction', witness, counts)
        else:
            rep.ok()
        if not all(phi_psi_roundtrip(X) for X in (P, M, N)):
            rep.fail('phi_psi', witness)
        else:
            rep.ok()
        for X, Y in ((P, M), (M, N)):
            via = smith_decompose(tensor_presentation(X, Y), ring)
            if via != tensor(X, Y):
                rep.fail('tensor_presentation', witness, list(via.factors))
            else:
                rep.ok()
        assoc = assoc_checks(P, M, N)
        if not assoc.passed:
            rep.fail('assoc', witness, assoc.failures)
        else:
            rep.ok()
    rep.verified_range['cases'] = count
    return rep


def telescope_suite(rng: np.random.Generator, count: int = 100,
                    max_N: int = 4, length: int = 5) -> AxiomReport:
    """q_i = p_i + s q_{i+1} holds, and p = 0 forces q = 0."""
    rep = AxiomReport('selftest:telescope')
    for trial in range(count):
        ring = LocalRingSpec('eps', _pick(rng, (2, 3, 5)),
                             int(rng.integers(1, max_N + 1)))
        s = ring.random_element(rng, 1)
        p = [ring.random_element(rng) for _ in range(length)]
        q = telescope_solve(s, p)
        witness = {'trial': trial, 'ring': ring.label, 's': s}
        extended = q + [ring.zero]
        if any(q[i] != p[i] + s * extended[i + 1] for i in range(length)):
            rep.fail('recurrence', witness)
        elif any(telescope_solve(s, [ring.zero] * length)):
            rep.fail('uniqueness', witness)
        else:
            rep.ok()
        try:
            telescope_solve(ring.one, p)
            rep.fail('unit_scalar_accepted', witness)
        except SNotTopologicallyNilpotent:
            rep.ok()
    rep.verified_range['cases'] = count
    return rep


SUITES: Dict[str, Tuple[Callable[..., AxiomReport], int]] = {
    'axioms': (axiom_suite, 200),
    'nakayama': (nakayama_suite, 200),
    'adjunction': (adjunction_suite, 8),
    'stasheff': (stasheff_suite, 100),
    'idempotents': (idempotent_suite, 100),
    'rmod': (rmod_suite, 30),
    'telescope': (telescope_suite, 100),
}


def run_selftest(seed: int = 0, suites: Optional[Sequence[str]] = None,
                 scale_factor: float = 1.0) -> List[AxiomReport]:
    """
    Run the property suites under one seed.

    Each suite gets its own generator seeded from `seed` and its position,
    so suites can be selected without changing each other's draws.

    Args:
        seed (int): base seed
        suites (Sequence[str], optional): names from SUITES; default all
        scale_factor (float): multiplies the case counts (at least 1 case)

    Raises:
        ValueError: if a suite name is unknown
    """
    names = list(SUITES) if suites is None else list(suites)
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        raise ValueError(f'unknown suite(s) {unknown}; choose from '
                         f'{list(SUITES)}')
    reports = []
    for name in names:
        fn, count = SUITES[name]
        rng = np.random.default_rng([seed, list(SUITES).index(name)])
        n = max(1, int(round(count * scale_factor)))
        report = fn(rng, n)
        logger.info('%s: passed=%s (%d checked)', report.subject,
                    report.passed, report.checked)
        reports.append(report)
    return reports
