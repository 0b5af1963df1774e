"""
Module for weakly curved A∞-algebras, their morphisms and left modules,
given by tables of operations on basis words.

Operations are stored unshifted, m_n: A^⊗n → A of degree 2 - n. The checks
run on the shifted maps of A[1]:

    b_n(a₁..aₙ)    = (-1)^{n + Σ (n-i)(|aᵢ|+1)} m_n(a₁..aₙ)
    F_n(a₁..aₙ)    = (-1)^{n + 1 + Σ (n-i)(|aᵢ|+1)} f_n(a₁..aₙ)
    L_n(a₁..aₙ, x) = (-1)^{n + 1 + Σ (n+1-i)(|aᵢ|+1)} l_n(a₁..aₙ, x)

so that a wcDG-algebra (B, d, h) has b_0 = h, b_1 = -d and
b_2(a, b) = (-1)^{|a|+1} ab, the projections of the bar differential.
Identities are evaluated on every basis word of length at most the weight
cap; operations above the cap are zero.

TODO:
- right A∞-modules; only left modules are modelled.
"""

__all__ = [
    "AinftyAlgebra",
    "AinftyMorphism",
    "AinftyModule",
    "StrictUnitWitness",
    "check_stasheff",
    "stasheff_oracle",
    "check_morphism",
    "check_module",
    "check_strict_unit",
    "bar_of_strictly_unital",
    "enveloping_wcdg",
    "from_cdg",
    "from_cdg_module",
    "from_cdg_morphism",
    "coalgebra_map",
    "components_of",
]

import itertools
import logging
from dataclasses import dataclass, field
from typing import (Any, Callable, Dict, Hashable, Iterable, List, Mapping,
                    Optional, Tuple)

from wcurve.barcobar import cobar, word_coderivation, word_module
from wcurve.cdg import CdgAlgebra, CdgModule, CdgMorphism, attempt, sign
from wcurve.coalgebra import CdgCoalgebra
from wcurve.errors import (NotWeaklyCurved, OutsideWindow, WindowTruncation,
                           ZeroAlgebra)
from wcurve.graded import GradedModule
from wcurve.reports import AxiomReport, jsonable
from wcurve.ring import LocalRingSpec, RingElem
from wcurve.vectors import Vector, axpy, scale, subtract

logger = logging.getLogger(__name__)

Label = Hashable
Word = Tuple[Label, ...]


def _algebra_sign(word: Word, degree: Callable[[Label], int]) -> int:
    n = len(word)
    return sign(n + sum((n - i) * (degree(a) + 1)
                        for i, a in enumerate(word, 1)))


def _morphism_sign(word: Word, degree: Callable[[Label], int]) -> int:
    return -_algebra_sign(word, degree)


def _module_sign(word: Word, degree: Callable[[Label], int]) -> int:
    n = len(word)
    return sign(n + 1 + sum((n + 1 - i) * (degree(a) + 1)
                            for i, a in enumerate(word, 1)))


def _normalize(ring: LocalRingSpec, vec: Mapping[Label, Any]) -> Vector:
    out = {}
    for k, c in vec.items():
        c = ring.element(c)
        if c:
            out[k] = c
    return out


def _lookup(table: Mapping[int, Mapping[Any, Vector]], n: int, key,
            cap: int, partial: Iterable[int], beyond_cap_known: bool,
            what: str) -> Vector:
    if n > cap:
        if beyond_cap_known:
            return {}
        raise OutsideWindow(f'{what}_{n} lies above the weight cap {cap}')
    entries = table.get(n, {})
    if key in entries:
        return entries[key]
    if n in partial:
        raise OutsideWindow(f'{what}_{n}{key!r} is not materialized')
    return {}


class AinftyAlgebra:
    """
    A weakly curved A∞-algebra with operations m_0 .. m_L on basis words.

    Attributes:
        module (GradedModule): the underlying graded module A
        ops (dict): n -> {word: Vector}; an absent word means m_n(word) = 0
            unless n is in `partial`
        weight_cap (int): m_n = 0 for n > weight_cap
        name (str)
        partial (set): arities whose tables stop at a degree window
    """

    def __init__(self, module: GradedModule,
                 ops: Mapping[int, Mapping[Word, Mapping[Label, Any]]],
                 weight_cap: int = 4, name: str = 'A',
                 partial: Iterable[int] = ()):
        ring = module.ring
        self.module = module
        self.weight_cap = weight_cap
        self.name = name
        self.partial = set(partial)
        self.ops: Dict[int, Dict[Word, Vector]] = {}
        for n, table in ops.items():
            n = int(n)
            if n < 0:
                raise ValueError(f'operation index must be >= 0, got {n}')
            entries = {}
            for word, vec in table.items():
                word = tuple(word)
                if len(word) != n:
                    raise ValueError(f'm_{n} given on a word of length '
                                     f'{len(word)}: {word!r}')
                missing = [a for a in word if a not in module]
                if missing:
                    raise ValueError(f'm_{n} uses unknown labels {missing}')
                vec = _normalize(ring, vec)
                expected = sum(module.degree[a] for a in word) + 2 - n
                bad = [k for k in vec if module.degree.get(k) != expected]
                if bad:
                    raise ValueError(f'm_{n}{word!r} has terms {bad} outside '
                                     f'degree {expected}')
                entries[word] = vec
            if n > weight_cap and any(entries.values()):
                raise ValueError(f'm_{n} is nonzero above the weight cap '
                                 f'{weight_cap}')
            self.ops[n] = entries
        strong = {k: c for k, c in self.curvature.items()
                  if c.valuation() < 1}
        if strong:
            raise NotWeaklyCurved(f'm_0 of {name} has unit coefficients: '
                                  f'{strong}')

    def __repr__(self):
        return f'AinftyAlgebra({self.name}, cap={self.weight_cap})'

    @property
    def ring(self) -> LocalRingSpec:
        return self.module.ring

    @property
    def labels(self) -> Tuple[Label, ...]:
        return self.module.labels

    def degree(self, label) -> int:
        return self.module.degree[label]

    @property
    def curvature(self) -> Vector:
        return self.ops.get(0, {}).get((), {})

    def m(self, word: Word) -> Vector:
        """m_n on a basis word."""
        return _lookup(self.ops, len(word), tuple(word), self.weight_cap,
                       self.partial, True, f'{self.name}.m')

    def b(self, word: Word) -> Vector:
        """The shifted operation b_n on a basis word."""
        return scale(self.m(word), _algebra_sign(word, self.degree))

    def coderivation(self, word: Word) -> Vector:
        """The square-zero candidate D on T(A[1]) applied to a word."""
        return word_coderivation(word, self.b, self.degree, None,
                                 range(self.weight_cap + 1))

    def words(self, n: int) -> Iterable[Word]:
        return itertools.product(self.labels, repeat=n)

    def to_json(self) -> dict:
        return {'name': self.name,
                'weight_cap': self.weight_cap,
                'ops': {str(n): [[jsonable(w), jsonable(v)]
                                 for w, v in table.items() if v]
                        for n, table in sorted(self.ops.items())}}


def _stasheff_defect(A: AinftyAlgebra, word: Word) -> Vector:
    out: Vector = {}
    for u, c in A.coderivation(word).items():
        axpy(out, A.b(u), c)
    return out


def check_stasheff(A: AinftyAlgebra, max_length: Optional[int] = None
                   ) -> AxiomReport:
    """
    Evaluate the Stasheff identities on every basis word up to max_length.

    The identity on a word w is the weight-one projection of D²(w), which
    is Σ b_i(.. b_j(..) ..) with the shifted signs.

    Args:
        A (AinftyAlgebra): the operations
        max_length (int, optional): longest input word, default the cap

    Returns:
        (AxiomReport): one failure per word with a nonzero defect
    """
    L = A.weight_cap if max_length is None else max_length
    rep = AxiomReport(f'stasheff:{A.name}')
    for n in range(L + 1):
        for w in A.words(n):
            attempt(rep, f'stasheff_{n}', w, lambda: _stasheff_defect(A, w))
    rep.verified_range['weights'] = [0, L]
    logger.debug('%s: %d checked, %d skipped', rep.subject, rep.checked,
                 rep.skipped)
    return rep


def stasheff_oracle(A: AinftyAlgebra, max_length: Optional[int] = None
                    ) -> List[Word]:
    """
    Words w with D(D(w)) != 0, expanding both coderivations completely.

    Words touching unknown operations are left out.
    """
    L = A.weight_cap if max_length is None else max_length
    bad = []
    for n in range(L + 1):
        for w in A.words(n):
            try:
                square: Vector = {}
                for u, c in A.coderivation(w).items():
                    axpy(square, A.coderivation(u), c)
            except OutsideWindow:
                continue
            if square:
                bad.append(w)
    return bad


class AinftyMorphism:
    """
    A morphism of A∞-algebras with components f_n: A^⊗n → B of degree 1 - n.

    Attributes:
        source (AinftyAlgebra)
        target (AinftyAlgebra)
        components (dict): n -> {word: Vector in B}
        weight_cap (int)
        name (str)
        partial (set): arities whose tables stop at a degree window
        truncated (bool): components above the cap are unknown rather than
            zero
    """

    def __init__(self, source: AinftyAlgebra, target: AinftyAlgebra,
                 components: Mapping[int, Mapping[Word, Mapping[Label, Any]]],
                 weight_cap: Optional[int] = None, name: str = 'f',
                 partial: Iterable[int] = (), truncated: bool = False):
        ring = target.ring
        self.source = source
        self.target = target
        self.weight_cap = (source.weight_cap if weight_cap is None
                           else weight_cap)
        self.name = name
        self.partial = set(partial)
        self.truncated = truncated
        self.components: Dict[int, Dict[Word, Vector]] = {}
        for n, table in components.items():
            n = int(n)
            entries = {}
            for word, vec in table.items():
                word = tuple(word)
                if len(word) != n:
                    raise ValueError(f'f_{n} given on a word of length '
                                     f'{len(word)}: {word!r}')
                vec = _normalize(ring, vec)
                expected = sum(source.degree(a) for a in word) + 1 - n
                bad = [k for k in vec if target.module.degree.get(k) != expected]
                if bad:
                    raise ValueError(f'f_{n}{word!r} has terms {bad} outside '
                                     f'degree {expected}')
                entries[word] = vec
            self.components[n] = entries
        strong = {k: c for k, c in self.f(()).items() if c.valuation() < 1}
        if strong:
            raise NotWeaklyCurved(f'f_0 of {name} has unit coefficients: '
                                  f'{strong}')

    def __repr__(self):
        return (f'AinftyMorphism({self.name}: {self.source.name} -> '
                f'{self.target.name})')

    @classmethod
    def identity(cls, A: AinftyAlgebra) -> 'AinftyMorphism':
        return cls(A, A, {1: {(a,): {a: A.ring.one} for a in A.labels}},
                   name='id')

    def f(self, word: Word) -> Vector:
        return _lookup(self.components, len(word), tuple(word),
                       self.weight_cap, self.partial, not self.truncated,
                       f'{self.name}.f')

    def shifted(self, word: Word) -> Vector:
        return scale(self.f(word), _morphism_sign(word, self.source.degree))


def coalgebra_map(F: AinftyMorphism, word: Word, max_length: int) -> Vector:
    """
    The coalgebra morphism T(A[1]) → T(B[1]) determined by F, on one word,
    keeping output words of length <= max_length.

    Each output word is F(w₁) ⊗ ... ⊗ F(w_k) over the splittings of the
    input into k consecutive, possibly empty, pieces.
    """
    ring = F.target.ring
    n = len(word)
    out: Vector = {}
    if n == 0:
        out[()] = ring.one
    for k in range(1, max_length + 1):
        for cuts in itertools.combinations_with_replacement(range(n + 1),
                                                            k - 1):
            bounds = (0,) + cuts + (n,)
            acc: Vector = {(): ring.one}
            for i in range(k):
                piece = F.shifted(word[bounds[i]:bounds[i + 1]])
                nxt: Vector = {}
                for t, c in acc.items():
                    for lab, e in piece.items():
                        ce = c * e
                        if ce:
                            nxt[t + (lab,)] = ce
                acc = nxt
                if not acc:
                    break
            axpy(out, acc)
    return out


def components_of(source: AinftyAlgebra, target: AinftyAlgebra,
                  fn: Callable[[Word], Vector], weight_cap: int,
                  name: str = 'f') -> AinftyMorphism:
    """Recover the components of a coalgebra map from its weight-one part."""
    components = {}
    for n in range(weight_cap + 1):
        table = {}
        for w in source.words(n):
            proj = {u[0]: c for u, c in fn(w).items() if len(u) == 1}
            if proj:
                table[w] = scale(proj, _morphism_sign(w, source.degree))
        components[n] = table
    return AinftyMorphism(source, target, components, weight_cap, name)


def _morphism_defect(F: AinftyMorphism, word: Word) -> Vector:
    B = F.target
    lhs: Vector = {}
    for u, c in coalgebra_map(F, word, B.weight_cap).items():
        axpy(lhs, B.b(u), c)
    rhs: Vector = {}
    for u, c in F.source.coderivation(word).items():
        axpy(rhs, F.shifted(u), c)
    return subtract(lhs, rhs)


def check_morphism(F: AinftyMorphism, max_length: Optional[int] = None
                   ) -> AxiomReport:
    """
    Evaluate D_B∘F = F∘D_A projected to weight one on every basis word.

    Powers of f_0 terminate since f_0 has coefficients in m.
    """
    L = F.weight_cap if max_length is None else max_length
    rep = AxiomReport(f'ainfty_morphism:{F.name}')
    for n in range(L + 1):
        for w in F.source.words(n):
            attempt(rep, f'morphism_{n}', w, lambda: _morphism_defect(F, w))
    rep.verified_range['weights'] = [0, L]
    return rep


class AinftyModule:
    """
    A left A∞-module with components l_n: A^⊗n ⊗ M → M of degree 1 - n.

    Attributes:
        algebra (AinftyAlgebra)
        module (GradedModule): M
        ops (dict): n -> {(word, x): Vector in M}
        weight_cap (int)
        name (str)
        partial (set)
    """

    def __init__(self, algebra: AinftyAlgebra, module: GradedModule,
                 ops: Mapping[int, Mapping[Tuple[Word, Label], Mapping]],
                 weight_cap: Optional[int] = None, name: str = 'M',
                 partial: Iterable[int] = (), side: str = 'left'):
        if side == 'right':
            raise NotImplementedError('right A∞-modules are not supported.')
        elif side != 'left':
            raise ValueError(f"side must be 'left' or 'right', got {side!r}")
        ring = module.ring
        self.algebra = algebra
        self.module = module
        self.weight_cap = (algebra.weight_cap if weight_cap is None
                           else weight_cap)
        self.name = name
        self.partial = set(partial)
        self.side = side
        self.ops: Dict[int, Dict[Tuple[Word, Label], Vector]] = {}
        for n, table in ops.items():
            n = int(n)
            entries = {}
            for (word, x), vec in table.items():
                word = tuple(word)
                if len(word) != n:
                    raise ValueError(f'l_{n} given on a word of length '
                                     f'{len(word)}: {word!r}')
                vec = _normalize(ring, vec)
                expected = (sum(algebra.degree(a) for a in word)
                            + module.degree[x] + 1 - n)
                bad = [k for k in vec if module.degree.get(k) != expected]
                if bad:
                    raise ValueError(f'l_{n}({word!r}, {x!r}) has terms {bad} '
                                     f'outside degree {expected}')
                entries[(word, x)] = vec
            self.ops[n] = entries

    def __repr__(self):
        return f'AinftyModule({self.name} over {self.algebra.name})'

    @property
    def labels(self):
        return self.module.labels

    def l(self, word: Word, x) -> Vector:
        return _lookup(self.ops, len(word), (tuple(word), x),
                       self.weight_cap, self.partial, True, f'{self.name}.l')

    def shifted(self, word: Word, x) -> Vector:
        return scale(self.l(word, x), _module_sign(word, self.algebra.degree))

    def coderivation(self, word: Word, x) -> Vector:
        """D on T(A[1]) ⊗ M, keys (word, y)."""
        A = self.algebra
        out: Vector = {}
        for u, c in A.coderivation(word).items():
            axpy(out, {(u, x): c})
        prefix = 0
        n = len(word)
        for i in range(n + 1):
            s = sign(prefix)
            for y, c in self.shifted(word[i:], x).items():
                axpy(out, {(word[:i], y): s * c})
            if i < n:
                prefix += A.degree(word[i]) + 1
        return out


def _module_defect(M: AinftyModule, word: Word, x) -> Vector:
    out: Vector = {}
    for (u, y), c in M.coderivation(word, x).items():
        axpy(out, M.shifted(u, y), c)
    return out


def check_module(M: AinftyModule, max_length: Optional[int] = None
                 ) -> AxiomReport:
    """Evaluate the module identities Σ l(.. b(..) .., x) + l(.., l(.., x))."""
    L = M.weight_cap if max_length is None else max_length
    rep = AxiomReport(f'ainfty_module:{M.name}')
    for n in range(L + 1):
        for w in M.algebra.words(n):
            for x in M.labels:
                attempt(rep, f'module_{n}', (w, x),
                        lambda: _module_defect(M, w, x))
    rep.verified_range['weights'] = [0, L]
    return rep


@dataclass(frozen=True)
class StrictUnitWitness:
    """
    A candidate strict unit with a retraction v: A → R, v(1) = 1.

    Attributes:
        unit (label): basis label of 1 in degree 0
        retraction (dict): label -> coefficient; default the coordinate of
            the unit
    """
    unit: Label
    retraction: Mapping[Label, Any] = field(default_factory=dict)

    def v(self, A: AinftyAlgebra) -> Dict[Label, RingElem]:
        ring = A.ring
        table = self.retraction or {self.unit: 1}
        v = _normalize(ring, table)
        if v.get(self.unit, ring.zero) != ring.one:
            raise ValueError('a retraction must send the unit to 1')
        bad = [k for k in v if A.degree(k) != 0]
        if bad:
            raise ValueError(f'retraction is not of degree 0 on {bad}')
        return v


def _apply_v(v: Mapping[Label, RingElem], vec: Vector,
             ring: LocalRingSpec) -> RingElem:
    total = ring.zero
    for k, c in vec.items():
        if k in v:
            total = total + c * v[k]
    return total


def _direct_unit_defect(A: AinftyAlgebra, one: Label, word: Word) -> Vector:
    value = A.m(word)
    if len(word) != 2:
        return value
    other = word[1] if word[0] == one else word[0]
    return subtract(value, {other: A.ring.one})


def _unit_corrections(A: AinftyAlgebra, v: Mapping[Label, RingElem],
                      word: Word) -> Tuple[Vector, RingElem]:
    """
    b_n(w) plus the unit correction of the twisted differential, and its
    value under v plus the correction of the curvature.
    """
    ring = A.ring
    b = A.b(word)
    vec = dict(b)
    scalar = _apply_v(v, b, ring)
    if len(word) == 2:
        k1, k2 = word
        v1, v2 = v.get(k1, ring.zero), v.get(k2, ring.zero)
        axpy(vec, {k2: ring.one}, v1)
        axpy(vec, {k1: ring.one}, -sign(A.degree(k1) - 1) * v2)
        scalar = scalar + v1 * v2
    return vec, scalar


def _kernel_unit_defect(A: AinftyAlgebra, one: Label,
                        v: Mapping[Label, RingElem], word: Word):
    vec, scalar = _unit_corrections(A, v, word)
    proj = {k: c for k, c in vec.items() if k != one}
    if not proj and not scalar:
        return None
    return {'projection': proj, 'retraction': scalar}


def check_strict_unit(A: AinftyAlgebra, witness: StrictUnitWitness,
                      max_length: Optional[int] = None) -> AxiomReport:
    """
    Verify a strict unit two ways and compare.

    The direct route checks m_2(1, a) = a = m_2(a, 1) and that every other
    m_n vanishes on words containing 1. The second route checks that the
    differential and curvature induced through v preserve the words
    containing the unit letter. A disagreement between the routes is
    reported as 'routes_disagree'.

    Raises:
        ZeroAlgebra: if A has no basis
        ValueError: if the unit or retraction is malformed
    """
    if not A.labels:
        raise ZeroAlgebra(f'{A.name} is zero')
    one = witness.unit
    if one not in A.module or A.degree(one) != 0:
        raise ValueError(f'unit {one!r} is not a degree 0 basis label')
    v = witness.v(A)
    L = A.weight_cap if max_length is None else max_length
    direct = AxiomReport(f'strict_unit_direct:{A.name}')
    kernel = AxiomReport(f'strict_unit_kernel:{A.name}')
    for n in range(1, L + 1):
        for w in A.words(n):
            if one not in w:
                continue
            attempt(direct, 'unit_direct', w,
                    lambda: _direct_unit_defect(A, one, w))
            attempt(kernel, 'unit_kernel', w,
                    lambda: _kernel_unit_defect(A, one, v, w))
    rep = direct.merge(kernel, f'strict_unit:{A.name}')
    bad_direct = sorted(str(f['witness']) for f in direct.failures)
    bad_kernel = sorted(str(f['witness']) for f in kernel.failures)
    if bad_direct != bad_kernel:
        rep.fail('routes_disagree', {'direct': bad_direct,
                                     'kernel': bad_kernel})
    rep.verified_range['weights'] = [1, L]
    return rep


def bar_of_strictly_unital(A: AinftyAlgebra, witness: StrictUnitWitness,
                           cap: int = 3, check: bool = True) -> CdgCoalgebra:
    """
    The CDG-coalgebra on ⊕_{n <= cap} A_+[1]^{⊗n} of a strictly unital A.

    Its coderivation has projections
    q_j(s) = π(b_j(s) + [j = 2](v(s₁)s₂ - (-1)^{|s₁|-1}s₁v(s₂))) and its
    curvature is h(s) = v(b_n(s)) + [n = 2]v(s₁)v(s₂), where π drops the
    unit coordinate.

    Raises:
        AxiomFailure: with `check`, if the unit is not strict
        WindowTruncation: if the curvature needs an unknown operation
    """
    if check:
        check_strict_unit(A, witness).raise_if_failed()
    ring = A.ring
    one = witness.unit
    v = witness.v(A)
    letters = [a for a in A.labels if a != one]
    words, module, comult = word_module(ring, letters, A.degree, cap)

    def proj(piece: Word) -> Vector:
        vec, _ = _unit_corrections(A, v, piece)
        return {k: c for k, c in vec.items() if k != one}

    d = {}
    h = {}
    arities = range(A.weight_cap + 1)
    for w in words:
        try:
            d[w] = word_coderivation(w, proj, A.degree, cap, arities)
        except OutsideWindow:
            pass
        # v lives in degree 0, so only words of degree -2 carry curvature
        if module.degree[w] != -2 or len(w) > A.weight_cap:
            continue
        try:
            _, scalar = _unit_corrections(A, v, w)
        except OutsideWindow:
            raise WindowTruncation(f'curvature of the bar word {w!r} needs an '
                                   f'unknown operation', [-2])
        if scalar:
            h[w] = scalar
    logger.debug('bar of %s: %d words, %d differentials known', A.name,
                 len(words), len(d))
    return CdgCoalgebra(module, comult, {(): ring.one}, d, h,
                        f'Br({A.name})')


def from_cdg(B: CdgAlgebra, weight_cap: int = 4) -> AinftyAlgebra:
    """
    A wcDG-algebra as an A∞-algebra: m_0 = h, m_1 = d, m_2 = product.

    Raises:
        NotWeaklyCurved: if h is not divisible by m
    """
    partial = set()
    m1, m2 = {}, {}
    for a in B.labels:
        if a in B.d:
            m1[(a,)] = B.d[a]
        else:
            partial.add(1)
    for a, b in itertools.product(B.labels, repeat=2):
        if (a, b) in B.mult:
            m2[(a, b)] = B.mult[(a, b)]
        else:
            partial.add(2)
    return AinftyAlgebra(B.module, {0: {(): B.h}, 1: m1, 2: m2},
                         max(weight_cap, 2), B.name, partial)


def from_cdg_module(M: CdgModule, algebra: Optional[AinftyAlgebra] = None
                    ) -> AinftyModule:
    """A left CDG-module as an A∞-module: l_0 = d, l_1 = action."""
    if M.side != 'left':
        raise NotImplementedError('right A∞-modules are not supported.')
    A = from_cdg(M.algebra) if algebra is None else algebra
    partial = set()
    l0, l1 = {}, {}
    for x in M.labels:
        if x in M.d:
            l0[((), x)] = M.d[x]
        else:
            partial.add(0)
        for b in M.algebra.labels:
            if (b, x) in M.action:
                l1[((b,), x)] = M.action[(b, x)]
            else:
                partial.add(1)
    return AinftyModule(A, M.module, {0: l0, 1: l1}, A.weight_cap, M.name,
                        partial)


def from_cdg_morphism(F: CdgMorphism, source: Optional[AinftyAlgebra] = None,
                      target: Optional[AinftyAlgebra] = None
                      ) -> AinftyMorphism:
    """
    A CDG-morphism (f, a) as an A∞-morphism with f_0 = a and f_1 = f.

    Raises:
        NotWeaklyCurved: if a is not divisible by m
    """
    A = from_cdg(F.source) if source is None else source
    B = from_cdg(F.target) if target is None else target
    partial = set()
    f1 = {}
    for b in F.source.labels:
        if b in F.f:
            f1[(b,)] = F.f[b]
        else:
            partial.add(1)
    return AinftyMorphism(A, B, {0: {(): F.a}, 1: f1}, A.weight_cap, F.name,
                          partial)


def enveloping_wcdg(A: AinftyAlgebra, witness: StrictUnitWitness,
                    w: Optional[Vector] = None,
                    window: Tuple[int, int] = (0, 6), max_len: int = 8,
                    cap: int = 3) -> Tuple[CdgAlgebra, AinftyMorphism]:
    """
    The enveloping wcDG-algebra U = Cb_w(Br_v(A)) and the natural A∞-morphism
    A → U with f_n(a₁..aₙ) = ∓[a₁|..|aₙ] + [n = 1]v(a₁)·1.

    Components above the bar cap are unknown, so the morphism is truncated
    there.

    Raises:
        WindowTruncation: if the curvature of U leaves the window
    """
    Br = bar_of_strictly_unital(A, witness, cap)
    U = cobar(Br, w, window, max_len)
    UA = from_cdg(U, max(2, cap))
    ring = A.ring
    one = witness.unit
    v = witness.v(A)
    components: Dict[int, Dict[Word, Vector]] = {}
    partial = set()
    for n in range(cap + 1):
        table = {}
        for word in A.words(n):
            shifted: Vector = {}
            if n == 1:
                axpy(shifted, {(): v.get(word[0], ring.zero)})
            if n >= 1 and one not in word:
                label = (word,)
                if label not in U.module:
                    partial.add(n)
                    continue
                axpy(shifted, {label: -ring.one})
            if shifted:
                table[word] = scale(shifted, _morphism_sign(word, A.degree))
        components[n] = table
    F = AinftyMorphism(A, UA, components, cap, f'{A.name}->U', partial,
                       truncated=True)
    logger.debug('enveloping algebra of %s: %d words', A.name, len(U.labels))
    return U, F
