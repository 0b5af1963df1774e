"""
Module for finite-length modules over k[eps]/eps^N and Z/p^N.

Over these Artinian quotients contramodules, comodules and modules
coincide, C(R) = R, and every operation below is computed on lists of
cyclic factors R/eps^k. The contra/co operations are realized through
their defining adjunctions and dual formulas; the adjunctions themselves
are checked by enumeration in the tests.

TODO:
- presentations with more generators than relations are decomposed but
  the change of basis back to the presentation is not kept.
"""

__all__ = [
    "FgModule",
    "FgMap",
    "smith_decompose",
    "generator_order",
    "tensor",
    "hom",
    "dualize",
    "contratensor",
    "ctrhom",
    "cotensor",
    "cohom",
    "canonical_object",
    "phi",
    "psi",
    "phi_psi_roundtrip",
    "tensor_presentation",
    "hom_set",
    "curry",
    "adjunction_counts",
    "assoc_checks",
]

import itertools
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from wcurve import linalg
from wcurve.errors import EnumerationBudgetExceeded, PrecisionInsufficient
from wcurve.reports import AxiomReport
from wcurve.ring import LocalRingSpec, RingElem

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FgModule:
    """
    A finite-length module ⊕ R/eps^{k_i} with generators e_i.

    Attributes:
        ring (LocalRingSpec)
        factors (tuple): exponents k_i, 1 <= k_i <= N, descending
        presentation (np.ndarray, optional): the matrix this module is the
            cokernel of
    """
    ring: LocalRingSpec
    factors: Tuple[int, ...]
    presentation: Optional[np.ndarray] = field(default=None, compare=False,
                                               repr=False)

    def __post_init__(self):
        ks = tuple(sorted((int(k) for k in self.factors), reverse=True))
        for k in ks:
            if not 1 <= k <= self.ring.N:
                raise ValueError(f'cyclic factor exponent {k} outside '
                                 f'1..{self.ring.N}')
        object.__setattr__(self, 'factors', ks)

    @classmethod
    def free(cls, ring: LocalRingSpec, rank: int) -> 'FgModule':
        return cls(ring, (ring.N,) * rank)

    @classmethod
    def from_presentation(cls, matrix, ring: LocalRingSpec) -> 'FgModule':
        return smith_decompose(matrix, ring)

    @property
    def length(self) -> int:
        return sum(self.factors)

    @property
    def rank(self) -> int:
        """Number of cyclic factors (minimal number of generators)."""
        return len(self.factors)

    def is_free(self) -> bool:
        return all(k == self.ring.N for k in self.factors)

    def is_zero(self) -> bool:
        return not self.factors

    def canonical(self, coords: Sequence[RingElem]) -> Tuple[RingElem, ...]:
        return tuple(self.ring.element(c).truncate(k)
                     for c, k in zip(coords, self.factors))

    def elements(self) -> Iterator[Tuple[RingElem, ...]]:
        """All elements as coordinate tuples (finite rings only)."""
        choices = [_residues(self.ring, k) for k in self.factors]
        return itertools.product(*choices)

    def to_json(self) -> dict:
        return {'factors': list(self.factors)}

    def __repr__(self):
        return f'FgModule({self.ring.label}, factors={list(self.factors)})'


def _residues(ring: LocalRingSpec, k: int) -> List[RingElem]:
    """Canonical representatives of R/eps^k."""
    return [e for e in ring.elements() if e == e.truncate(k)]


def _to_matrix(matrix, ring: LocalRingSpec) -> np.ndarray:
    if isinstance(matrix, np.ndarray) and matrix.dtype == object and (
            matrix.size == 0 or isinstance(matrix.flat[0], RingElem)):
        return matrix
    rows = [list(r) for r in matrix]
    return linalg.from_rows(ring, rows)


def smith_decompose(matrix, ring: LocalRingSpec,
                    source_precision: Optional[int] = None) -> FgModule:
    """
    Cokernel of a presentation matrix as a sum of cyclic factors.

    Args:
        matrix: m x n matrix (rows = generators, columns = relations)
        ring (LocalRingSpec)
        source_precision (int, optional): the precision the entries were
            known at, when larger than ring.N

    Raises:
        PrecisionInsufficient: a relation pivot vanishes at precision N
            while the data came from higher precision, so whether the
            factor is free or torsion cannot be decided

    Returns:
        (FgModule): with `presentation` set
    """
    A = _to_matrix(matrix, ring)
    m, n = A.shape
    snf = linalg.smith(A, ring)
    if source_precision is not None and source_precision > ring.N:
        hidden = [t for t in range(min(m, n)) if snf.exponents[t] >= ring.N]
        if hidden and not linalg.is_zero(A):
            raise PrecisionInsufficient(
                f'pivot(s) {hidden} reached valuation {ring.N}; precision '
                f'{source_precision} data is truncated')
    factors = [k for k in snf.exponents if k > 0]
    factors += [ring.N] * (m - min(m, n))
    return FgModule(ring, tuple(factors), A)


def _pairs(M: FgModule, N: FgModule):
    if M.ring != N.ring:
        raise ValueError(f'modules over {M.ring.label} and {N.ring.label}')
    return [(i, j, min(a, b)) for i, a in enumerate(M.factors)
            for j, b in enumerate(N.factors)]


def generator_order(M: FgModule, N: FgModule) -> List[Tuple[int, int]]:
    """Pairs (i, j) in the order of the generators of M ⊗ N and Hom(M, N)."""
    pairs = _pairs(M, N)
    return [(i, j) for i, j, _ in sorted(pairs, key=lambda x: -x[2])]


def tensor(M: FgModule, N: FgModule) -> FgModule:
    """R/eps^a ⊗ R/eps^b = R/eps^min(a,b); generators e_i⊗f_j."""
    return FgModule(M.ring, tuple(k for _, _, k in _pairs(M, N)))


def hom(M: FgModule, N: FgModule) -> FgModule:
    """
    Hom(M, N) with generators g_ij: e_i ↦ eps^max(0, n_j - m_i) f_j of
    order min(m_i, n_j).
    """
    return FgModule(M.ring, tuple(k for _, _, k in _pairs(M, N)))


def canonical_object(ring: LocalRingSpec) -> FgModule:
    """C(R); the supported rings are quasi-Frobenius, so C(R) = R."""
    return FgModule.free(ring, 1)


def dualize(M: FgModule) -> FgModule:
    """M* = Hom(M, C(R)); generator i sends e_i to eps^(N - m_i)."""
    return hom(M, canonical_object(M.ring))


def contratensor(P: FgModule, M: FgModule) -> FgModule:
    """P ⊙ M; equals P ⊗ M at Artinian scale (the adjunction is tested)."""
    return tensor(P, M)


def ctrhom(P: FgModule, M: FgModule) -> FgModule:
    return hom(P, M)


def cotensor(N: FgModule, M: FgModule) -> FgModule:
    """N ◻ M = Hom(Hom(N, C), M)."""
    return hom(dualize(N), M)


def cohom(N: FgModule, P: FgModule) -> FgModule:
    """Cohom(N, P) = N* ⊗ P."""
    return tensor(dualize(N), P)


class FgMap:
    """
    A module map given on generators: column j is the image of e_j.

    Raises:
        ValueError: if some entry is not compatible with the orders of the
            cyclic factors
    """

    def __init__(self, source: FgModule, target: FgModule, matrix):
        self.source = source
        self.target = target
        ring = source.ring
        A = _to_matrix(matrix, ring).copy() if len(target.factors) else \
            linalg.zeros(ring, 0, len(source.factors))
        if A.shape != (len(target.factors), len(source.factors)):
            raise ValueError(f'matrix shape {A.shape} does not match '
                             f'{target.rank} x {source.rank}')
        for i, k in enumerate(target.factors):
            for j, l in enumerate(source.factors):
                a = A[i, j].truncate(k)
                if a and a.valuation() < k - l:
                    raise ValueError(f'entry ({i},{j}) = {a!r} is not '
                                     f'well defined from R/e^{l} to R/e^{k}')
                A[i, j] = a
        self.matrix = A

    @property
    def ring(self) -> LocalRingSpec:
        return self.source.ring

    def __eq__(self, other):
        return (isinstance(other, FgMap) and self.source == other.source and
                self.target == other.target and
                linalg.equal(self.matrix, other.matrix))

    def __hash__(self):
        return hash((self.source, self.target, tuple(self.matrix.flat)))

    def __repr__(self):
        return f'FgMap({self.source!r} -> {self.target!r})'

    def apply(self, coords: Sequence[RingElem]) -> Tuple[RingElem, ...]:
        col = np.array(list(coords), dtype=object).reshape(-1, 1)
        out = linalg.matmul(self.matrix, col, self.ring)[:, 0]
        return self.target.canonical(out)

    def compose(self, other: 'FgMap') -> 'FgMap':
        """self o other."""
        return FgMap(other.source, self.target,
                     linalg.matmul(self.matrix, other.matrix, self.ring))

    def cokernel(self) -> FgModule:
        k = len(self.target.factors)
        rel = linalg.zeros(self.ring, k, k)
        for i, e in enumerate(self.target.factors):
            rel[i, i] = self.ring.eps_power(e)
        pres = np.concatenate([self.matrix, rel], axis=1) if k else rel
        return smith_decompose(pres, self.ring)

    def image_length(self) -> int:
        return self.target.length - self.cokernel().length

    def is_surjective(self) -> bool:
        return self.cokernel().is_zero()

    def is_injective(self) -> bool:
        return self.image_length() == self.source.length

    def is_isomorphism(self) -> bool:
        return (self.source.length == self.target.length and
                self.is_surjective())


def _identity_map(M: FgModule) -> FgMap:
    return FgMap(M, M, linalg.identity(M.ring, len(M.factors)))


def phi(X: FgModule) -> Tuple[FgModule, FgMap]:
    """Φ(X) = C(R) ⊙ X together with the identification X → Φ(X)."""
    out = contratensor(canonical_object(X.ring), X)
    return out, FgMap(X, out, linalg.identity(X.ring, len(X.factors)))


def psi(X: FgModule) -> Tuple[FgModule, FgMap]:
    """Ψ(X) = Ctrhom(C(R), X) together with the identification X → Ψ(X)."""
    out = ctrhom(canonical_object(X.ring), X)
    return out, FgMap(X, out, linalg.identity(X.ring, len(X.factors)))


def phi_psi_roundtrip(X: FgModule) -> bool:
    """Check that ψφ and φψ are identities on X through the witnesses."""
    Y, f = phi(X)
    Z, g = psi(Y)
    W, f2 = psi(X)
    V, g2 = phi(W)
    ident = _identity_map(X)
    return (Z == X and V == X and
            g.compose(f) == FgMap(X, Z, ident.matrix) and
            g2.compose(f2) == FgMap(X, V, ident.matrix))


def tensor_presentation(M: FgModule, N: FgModule) -> np.ndarray:
    """Presentation [P_M ⊗ I, I ⊗ P_N] of M ⊗ N by Kronecker products."""
    ring = M.ring
    m, n = len(M.factors), len(N.factors)
    PM = linalg.zeros(ring, m, m)
    for i, k in enumerate(M.factors):
        PM[i, i] = ring.eps_power(k)
    PN = linalg.zeros(ring, n, n)
    for j, k in enumerate(N.factors):
        PN[j, j] = ring.eps_power(k)
    left = np.kron(PM, linalg.identity(ring, n)) if m and n else linalg.zeros(
        ring, m * n, 0)
    right = np.kron(linalg.identity(ring, m), PN) if m and n else linalg.zeros(
        ring, m * n, 0)
    out = np.concatenate([left, right], axis=1)
    for idx, x in np.ndenumerate(out):
        if not isinstance(x, RingElem):
            out[idx] = ring.element(int(x))
    return out


def hom_set(M: FgModule, N: FgModule, budget: int = 200000
            ) -> Iterator[FgMap]:
    """
    Enumerate Hom(M, N) by filtering candidate matrices.

    Raises:
        EnumerationBudgetExceeded: if the set is larger than `budget`
    """
    ring = M.ring
    cells = []
    total = 1
    for i, k in enumerate(N.factors):
        for j, l in enumerate(M.factors):
            allowed = [a for a in _residues(ring, k)
                       if not a or a.valuation() >= k - l]
            cells.append(((i, j), allowed))
            total *= len(allowed)
    if total > budget:
        raise EnumerationBudgetExceeded(f'|Hom| = {total} exceeds budget '
                                        f'{budget}')
    for choice in itertools.product(*(c for _, c in cells)):
        A = linalg.zeros(ring, len(N.factors), len(M.factors))
        for ((i, j), _), a in zip(cells, choice):
            A[i, j] = a
        yield FgMap(M, N, A)


def curry(F: FgMap, P: FgModule, M: FgModule) -> FgMap:
    """
    Hom(P ⊗ M, N) → Hom(P, Hom(M, N)): the image of p_i sends m_j to
    F(p_i ⊗ m_j).
    """
    ring = P.ring
    N = F.target
    H = hom(M, N)
    col_pm = {pair: c for c, pair in enumerate(generator_order(P, M))}
    pairs_mn = generator_order(M, N)
    A = linalg.zeros(ring, len(pairs_mn), len(P.factors))
    for i in range(len(P.factors)):
        for r, (j, k) in enumerate(pairs_mn):
            a = F.matrix[k, col_pm[(i, j)]]
            shift = max(0, N.factors[k] - M.factors[j])
            order = min(M.factors[j], N.factors[k])
            A[r, i] = a.shift_down(shift).truncate(order) if a else ring.zero
    return FgMap(P, H, A)


def adjunction_counts(P: FgModule, M: FgModule, N: FgModule,
                      budget: int = 200000) -> Dict[str, Any]:
    """
    Count both sides of Hom(P ⊙ M, N) = Hom(P, Ctrhom(M, N)) and check the
    curry map is a bijection between the enumerated sets.
    """
    left = list(hom_set(contratensor(P, M), N, budget))
    right = set(hom_set(P, ctrhom(M, N), budget))
    images = {curry(F, P, M) for F in left}
    return {'left': len(left), 'right': len(right),
            'bijective': len(images) == len(left) and images == right}


def _natural_diagonal(source: FgModule, target: FgModule,
                      gens_src: List[Tuple[Any, int]],
                      gens_tgt: List[Tuple[Any, int]],
                      exponent) -> FgMap:
    """
    A map sending each source generator (key, order) to eps^e times the
    target generator with the same key, e = exponent(key). Generators are
    listed in construction order; FgModule sorts factors, so both sides are
    reindexed by a stable sort on order.
    """
    ring = source.ring
    src = sorted(range(len(gens_src)), key=lambda t: -gens_src[t][1])
    tgt = sorted(range(len(gens_tgt)), key=lambda t: -gens_tgt[t][1])
    tgt_pos = {gens_tgt[t][0]: r for r, t in enumerate(tgt)}
    A = linalg.zeros(ring, len(tgt), len(src))
    for c, t in enumerate(src):
        key, _ = gens_src[t]
        e = exponent(key)
        A[tgt_pos[key], c] = ring.eps_power(e) if e >= 0 else ring.zero
    return FgMap(source, target, A)


def assoc_checks(P: FgModule, M: FgModule, N: FgModule,
                 Q: Optional[FgModule] = None) -> AxiomReport:
    """
    Build the four natural morphisms of the hom/contra/co associativity
    lemma and test each for being an isomorphism.

    (a) Hom(P,N)⊗M → Hom(P, N⊗M)          iso if P or M free
    (b) P*⊗Hom(N,M) → Hom(Hom(P*,N), M)    iso if P or M free
    (c) (P⊗M)*⊗Q → Hom(P, M*⊗Q)           iso if P or Q free
    (d) M*⊗Hom(P,Q) → Hom(P, M*⊗Q)        iso if P or M free

    Returns:
        (AxiomReport): a failure for every morphism that is not an
            isomorphism although its hypothesis holds; `verified_range`
            maps each part to {'iso', 'hypothesis'}
    """
    Q = N if Q is None else Q
    ring = P.ring
    Pf, Mf, Nf, Qf = P.factors, M.factors, N.factors, Q.factors
    report = AxiomReport('rmod:assoc')
    parts = {}

    def pos(x):
        return max(0, x)

    # (a): g_ik ⊗ m_j ↦ (p_i ↦ eps^s n_k⊗m_j)
    src = [((i, k, j), min(Pf[i], Nf[k], Mf[j])) for i in range(len(Pf))
           for k in range(len(Nf)) for j in range(len(Mf))]
    tgt = list(src)
    fa = _natural_diagonal(tensor(hom(P, N), M), hom(P, tensor(N, M)), src,
                           tgt, lambda key: pos(Nf[key[1]] - Pf[key[0]]) -
                           pos(min(Nf[key[1]], Mf[key[2]]) - Pf[key[0]]))
    parts['a'] = (fa, P.is_free() or M.is_free())

    # (b): λ_l ⊗ g_km ↦ (φ_lk ↦ eps^(t+s) μ_m)
    src = [((l, k, m), min(Pf[l], Nf[k], Mf[m])) for l in range(len(Pf))
           for k in range(len(Nf)) for m in range(len(Mf))]
    fb = _natural_diagonal(
        tensor(dualize(P), hom(N, M)), hom(hom(dualize(P), N), M), src, src,
        lambda key: pos(Nf[key[1]] - Pf[key[0]]) +
        pos(Mf[key[2]] - Nf[key[1]]) -
        pos(Mf[key[2]] - min(Pf[key[0]], Nf[key[1]])))
    parts['b'] = (fb, P.is_free() or M.is_free())

    # (c): π_ij ⊗ q_r ↦ (p_i ↦ eps^max(0, M_j - P_i) μ_j⊗q_r)
    src = [((i, j, r), min(Pf[i], Mf[j], Qf[r])) for i in range(len(Pf))
           for j in range(len(Mf)) for r in range(len(Qf))]
    fc = _natural_diagonal(
        tensor(dualize(tensor(P, M)), Q), hom(P, tensor(dualize(M), Q)),
        src, src,
        lambda key: pos(Mf[key[1]] - Pf[key[0]]) -
        pos(min(Mf[key[1]], Qf[key[2]]) - Pf[key[0]]))
    parts['c'] = (fc, P.is_free() or Q.is_free())

    # (d): μ_j ⊗ g_ir ↦ (p_i ↦ eps^s μ_j⊗q_r)
    src = [((j, i, r), min(Mf[j], Pf[i], Qf[r])) for j in range(len(Mf))
           for i in range(len(Pf)) for r in range(len(Qf))]
    fd = _natural_diagonal(
        tensor(dualize(M), hom(P, Q)), hom(P, tensor(dualize(M), Q)),
        src, src,
        lambda key: pos(Qf[key[2]] - Pf[key[1]]) -
        pos(min(Mf[key[0]], Qf[key[2]]) - Pf[key[1]]))
    parts['d'] = (fd, P.is_free() or M.is_free())

    for name, (f, hypothesis) in parts.items():
        iso = f.is_isomorphism()
        report.verified_range[name] = {'iso': iso, 'hypothesis': hypothesis}
        if hypothesis and not iso:
            report.fail(f'assoc_{name}', {'P': P.factors, 'M': M.factors,
                                          'N': N.factors, 'Q': Q.factors})
        else:
            report.ok()
    logger.debug('assoc checks over %s: %s', ring.label,
                 report.verified_range)
    return report
