"""
Module for the bar construction Br_v(B), the cobar construction Cb_w(C),
twisting cochains and the morphism-cochain correspondences between them.

Bar words are tuples of non-unit basis labels of B; the lift of a label e
along the retraction v is ṽ_e = e - v(e)·1. Cobar words are tuples of basis
labels of C other than the counit label; generator [c] has degree |c| + 1.

TODO:
- bar_functor only handles morphisms of the form (id, a); general
  weakly strict (f, a) would also need f applied letterwise.
"""

__all__ = [
    "BarCoalgebra",
    "CobarAlgebra",
    "TwistingCochain",
    "bar",
    "word_module",
    "word_coderivation",
    "cobar",
    "default_retraction",
    "default_section",
    "canonical_cochain_cobar",
    "canonical_cochain_bar",
    "check_twisting_cochain",
    "transport_along_algebra",
    "transport_along_coalgebra",
    "change_of_retraction",
    "change_of_section",
    "twist_algebra",
    "bar_functor",
    "enumerate_twisting_cochains",
    "adjunction_bijection",
]

import itertools
import logging
from typing import (Any, Callable, Dict, Hashable, Iterable, Iterator, List,
                    Mapping, Optional, Tuple)

from wcurve.cdg import CdgAlgebra, CdgMorphism, attempt, sign
from wcurve.coalgebra import CdgCoalgebra, CoalgebraMorphism
from wcurve.errors import (OutsideWindow, WindowTruncation, ZeroAlgebra,
                           ZeroCoalgebra)
from wcurve.graded import GradedMap, GradedModule
from wcurve.reports import AxiomReport, jsonable
from wcurve.ring import LocalRingSpec, RingElem
from wcurve.vectors import (Vector, axpy, check_budget, enumerate_vectors,
                            scale, subtract)

logger = logging.getLogger(__name__)

Label = Hashable
Word = Tuple[Label, ...]


def default_retraction(B: CdgAlgebra) -> Dict[Label, RingElem]:
    """v = the coordinate of the unit label."""
    return {B.unit: B.ring.one}


def default_section(C: CdgCoalgebra) -> Vector:
    """w(1) = the counit label."""
    e0 = C.counit_label
    if e0 is None:
        raise ValueError(f'{C.name} has no counit basis label')
    return {e0: C.ring.one}


class BarCoalgebra(CdgCoalgebra):
    """Br_v(B) truncated at tensor weight `cap`."""

    def __init__(self, algebra: CdgAlgebra, retraction: Mapping[Label, Any],
                 cap: int, module, comult, counit, d, h):
        super().__init__(module, comult, counit, d, h, f'Br({algebra.name})')
        self.algebra = algebra
        self.retraction = dict(retraction)
        self.cap = cap
        self.letters = [e for e in algebra.labels if e != algebra.unit]

    def v(self, u: Vector) -> RingElem:
        total = self.ring.zero
        for k, c in u.items():
            r = self.retraction.get(k)
            if r:
                total = total + c * r
        return total

    def pi(self, u: Vector) -> Vector:
        """Coordinates of an element of B on the non-unit labels."""
        unit = self.algebra.unit
        return {k: c for k, c in u.items() if k != unit}

    def lift(self, x: Vector) -> Vector:
        """ṽ(x) = x - v(x)·1 for x written on non-unit labels."""
        out = dict(x)
        axpy(out, self.algebra.one, -self.v(x))
        return out

    def q1(self, x: Vector) -> Vector:
        return scale(self.pi(self.algebra.diff(self.lift(x))), -1)

    def q2(self, x: Vector, y: Vector) -> Vector:
        B = self.algebra
        out: Vector = {}
        for e, ce in x.items():
            for f, cf in y.items():
                prod = B.mul(self.lift({e: B.ring.one}),
                             self.lift({f: B.ring.one}))
                axpy(out, self.pi(prod), sign(B.degree(e) + 1) * ce * cf)
        return out

    def h1(self, x: Vector) -> RingElem:
        return -self.v(self.algebra.diff(self.lift(x)))

    def h2(self, x: Vector, y: Vector) -> RingElem:
        B = self.algebra
        total = B.ring.zero
        for e, ce in x.items():
            for f, cf in y.items():
                prod = B.mul(self.lift({e: B.ring.one}),
                             self.lift({f: B.ring.one}))
                total = total + sign(B.degree(e) + 1) * ce * cf * self.v(prod)
        return total

    def word(self, letters: Vector) -> Vector:
        """A vector of B_+ as a vector of one-letter words."""
        return {(k,): c for k, c in letters.items()}


def _splice(word: Word, i: int, j: int, vec: Vector, coef) -> Vector:
    """Replace word[i:j] by each letter of vec."""
    return {word[:i] + (k,) + word[j:]: coef * c for k, c in vec.items()}


def word_module(ring: LocalRingSpec, letters: List[Label],
                letter_degree: Callable[[Label], int], cap: int
                ) -> Tuple[List[Word], GradedModule, Dict[Word, Vector]]:
    """
    The words of length <= cap in the shifted letters, with deconcatenation.

    A word (e₁, ..., eₙ) has degree Σ|eᵢ| - n. The module is open on both
    sides whenever there are letters, since longer words are missing.

    Returns:
        (words, module, comult)
    """
    words: List[Word] = [()]
    for n in range(1, cap + 1):
        words += list(itertools.product(letters, repeat=n))
    degrees = {w: sum(letter_degree(e) for e in w) - len(w) for w in words}
    lo, hi = min(degrees.values()), max(degrees.values())
    partial = set(range(lo, hi + 1)) if letters else set()
    module = GradedModule(ring, degrees, (lo, hi), bool(letters),
                          bool(letters), partial)
    comult = {w: {(w[:k], w[k:]): ring.one for k in range(len(w) + 1)}
              for w in words}
    return words, module, comult


def word_coderivation(word: Word,
                      proj: Callable[[Word], Vector],
                      letter_degree: Callable[[Label], int],
                      cap: Optional[int], arities: Iterable[int]) -> Vector:
    """
    The coderivation of the tensor coalgebra determined by `proj`.

    D(w) = Σ_{i,j} (-1)^{Σ_{l<=i}(|e_l|+1)} w[:i] ⊗ proj(w[i:i+j]) ⊗ w[i+j:]
    over the given arities j. A cap of None disables the length check.

    Raises:
        OutsideWindow: if a nonzero term would be longer than cap
    """
    n = len(word)
    arities = sorted(arities)
    out: Vector = {}
    prefix = 0
    for i in range(n + 1):
        s = sign(prefix)
        for j in arities:
            if i + j > n:
                break
            piece = proj(word[i:i + j])
            if not piece:
                continue
            if cap is not None and n - j + 1 > cap:
                raise OutsideWindow(f'coderivation of {word!r} leaves the cap')
            axpy(out, _splice(word, i, i + j, piece, s))
        if i < n:
            prefix += letter_degree(word[i]) + 1
    return out


def bar(B: CdgAlgebra, v: Optional[Mapping[Label, Any]] = None,
        cap: int = 3) -> BarCoalgebra:
    """
    The bar construction on ⊕_{n <= cap} B_+[1]^{⊗n}.

    The coderivation has projections 1 ↦ π(h), b ↦ -π(d ṽ_b) and
    b₁⊗b₂ ↦ (-1)^{|b₁|+1} π(ṽ_{b₁}ṽ_{b₂}); the curvature is
    h(()) = v(h), h([b]) = -v(d ṽ_b), h([b₁|b₂]) = (-1)^{|b₁|+1} v(ṽ_{b₁}ṽ_{b₂}).
    Words whose differential would leave the cap get no entry in `d`.

    Raises:
        ZeroAlgebra: if the unit of B vanishes modulo m
    """
    ring = B.ring
    if not B.labels or B.unit is None:
        raise ZeroAlgebra(f'{B.name} has no unit')
    v = dict(v) if v is not None else default_retraction(B)
    v = {k: ring.element(c) for k, c in v.items()}
    if v.get(B.unit, ring.zero) != ring.one:
        raise ValueError('a retraction must send the unit to 1')
    bad = [k for k, c in v.items() if c and B.degree(k) != 0]
    if bad:
        raise ValueError(f'retraction is not of degree 0 on {bad}')
    letters = [e for e in B.labels if e != B.unit]
    words, module, comult = word_module(ring, letters, B.degree, cap)
    Br = BarCoalgebra(B, v, cap, module, comult, {(): ring.one}, {}, {})

    piece0 = Br.pi(B.h)

    def proj(piece: Word) -> Vector:
        if not piece:
            return piece0
        if len(piece) == 1:
            return Br.q1({piece[0]: ring.one})
        return Br.q2({piece[0]: ring.one}, {piece[1]: ring.one})

    d = {}
    h = {}
    for w in words:
        n = len(w)
        try:
            d[w] = word_coderivation(w, proj, B.degree, cap, (0, 1, 2))
        except OutsideWindow:
            pass
        # v is concentrated in degree 0, so h lives on words of degree -2
        if module.degree[w] != -2 or n > 2:
            continue
        if n == 1:
            val = Br.h1({w[0]: ring.one})
        else:
            val = Br.h2({w[0]: ring.one}, {w[1]: ring.one})
        if val:
            h[w] = val
    Br.d = d
    Br.h = h
    logger.debug('bar of %s: %d words, %d differentials known', B.name,
                 len(words), len(d))
    return Br


class CobarAlgebra(CdgAlgebra):
    """Cb_w(C) materialized in a degree window with a word-length cap."""

    def __init__(self, coalgebra: CdgCoalgebra, section: Vector,
                 max_len: int, module, mult, d, h):
        super().__init__(module, (), mult, d, h, f'Cb({coalgebra.name})')
        self.coalgebra = coalgebra
        self.section = dict(section)
        self.max_len = max_len
        self.letters = [c for c in coalgebra.labels
                        if c != coalgebra.counit_label]

    def pi(self, x: Vector) -> Vector:
        """π_W(x) = x - ε(x) w(1) on the non-counit labels."""
        C = self.coalgebra
        e = C.eps(x)
        out = {k: c for k, c in x.items() if k != C.counit_label}
        if e:
            axpy(out, {k: c for k, c in self.section.items()
                       if k != C.counit_label}, -e)
        return out

    def generator(self, x: Vector) -> Vector:
        """The element [π_W x] of Cb as one-letter words."""
        return {(k,): c for k, c in self.pi(x).items()}


def _cobar_pieces(Cb: 'CobarAlgebra', x: Vector) -> Tuple[Vector, RingElem]:
    """
    For x in C: the word part and scalar part of
    sum (-1)^{|x₁|+1}[πx₁][πx₂] - [π dx] + h(x).
    """
    C = Cb.coalgebra
    r1 = C.ring.one
    words: Vector = {}
    for (x1, x2), c in C.comultiply(x).items():
        p1 = Cb.pi({x1: r1})
        p2 = Cb.pi({x2: r1})
        s = sign(C.degree(x1) + 1)
        for k1, c1 in p1.items():
            for k2, c2 in p2.items():
                axpy(words, {(k1, k2): s * c * c1 * c2})
    axpy(words, Cb.generator(C.diff(x)), -1)
    return words, C.curvature(x)


def cobar(C: CdgCoalgebra, w: Optional[Vector] = None,
          window: Tuple[int, int] = (0, 6), max_len: int = 8) -> CobarAlgebra:
    """
    The cobar construction on ⊕ C_+[-1]^{⊗n}, words of length <= max_len
    with degree in the window.

    d[c] = sum (-1)^{|c₁|+1}[πc₁][πc₂] - [π dc] + h(c), extended by the
    Leibniz rule; h_Cb = the same expression evaluated at w(1).

    Raises:
        ZeroCoalgebra: if C has no counit basis label
    """
    ring = C.ring
    e0 = C.counit_label
    if e0 is None:
        raise ZeroCoalgebra(f'{C.name} needs a counit basis label for cobar')
    w = dict(w) if w is not None else default_section(C)
    w = {k: ring.element(c) for k, c in w.items()}
    if C.eps(w) != ring.one:
        raise ValueError('a section must satisfy ε(w(1)) = 1')
    bad = [k for k in w if C.degree(k) != 0]
    if bad:
        raise ValueError(f'section is not of degree 0 on {bad}')
    letters = [c for c in C.labels if c != e0]
    gdeg = {c: C.degree(c) + 1 for c in letters}
    lo, hi = window
    words: List[Word] = []
    layer: List[Word] = [()]
    for n in range(max_len + 1):
        words += [u for u in layer if lo <= sum(gdeg[c] for c in u) <= hi]
        if n < max_len:
            layer = [u + (c,) for u in layer for c in letters]
    degrees = {u: sum(gdeg[c] for c in u) for u in words}
    if () not in degrees:
        raise ValueError('the cobar window must contain degree 0')
    partial = set()
    if letters:
        low = min(gdeg.values())
        high = max(gdeg.values())
        if low >= 1:
            partial = {n for n in range(lo, hi + 1) if n // low > max_len}
        elif high <= -1:
            partial = {n for n in range(lo, hi + 1)
                       if (-n) // (-high) > max_len}
        else:
            partial = set(range(lo, hi + 1))
    module = GradedModule(ring, degrees, window,
                          any(g < 0 for g in gdeg.values()) or bool(partial),
                          any(g > 0 for g in gdeg.values()) or bool(partial),
                          partial)
    known = set(words)
    mult = {}
    for u in words:
        for u2 in words:
            if u + u2 in known:
                mult[(u, u2)] = {u + u2: ring.one}
    Cb = CobarAlgebra(C, w, max_len, module, mult, {}, {})

    gen_d = {}
    for c in letters:
        try:
            gen_d[c] = _cobar_pieces(Cb, {c: ring.one})
        except OutsideWindow:
            continue

    d = {}
    for u in words:
        try:
            out: Vector = {}
            prefix = 0
            for i, c in enumerate(u):
                if c not in gen_d:
                    raise OutsideWindow(f'd[{c!r}] unknown')
                wd, scalar = gen_d[c]
                s = sign(prefix)
                for k, v in wd.items():
                    nw = u[:i] + k + u[i + 1:]
                    if nw not in known:
                        raise OutsideWindow(f'{nw!r} outside the window')
                    axpy(out, {nw: s * v})
                if scalar:
                    axpy(out, {u[:i] + u[i + 1:]: s * scalar})
                prefix += gdeg[c]
            d[u] = out
        except OutsideWindow:
            continue
    hw, hs = _cobar_pieces(Cb, w)
    h: Vector = {}
    for k, v in hw.items():
        if k not in known:
            raise WindowTruncation('cobar curvature lies outside the window',
                                   [sum(gdeg[c] for c in k)])
        axpy(h, {k: v})
    if hs:
        axpy(h, {(): hs})
    Cb.d = d
    Cb.h = h
    logger.debug('cobar of %s: %d words in window %s', C.name, len(words),
                 window)
    return Cb


class TwistingCochain:
    """
    A degree-1 map τ: C → B given on basis labels of C.

    The identity it must satisfy is
    (-1)^{|c₁|} τ(c₁)τ(c₂) + d_B τ(c) + τ(d_C c) + ε(c) h_B - h_C(c) 1 = 0.
    """

    def __init__(self, coalgebra: CdgCoalgebra, algebra: CdgAlgebra,
                 images: Mapping[Label, Vector], name: str = 'tau'):
        self.coalgebra = coalgebra
        self.algebra = algebra
        self.images = {k: dict(v) for k, v in images.items()}
        self.name = name

    def apply(self, u: Vector) -> Vector:
        out: Vector = {}
        for k, c in u.items():
            axpy(out, self.images.get(k, {}), c)
        return out

    def as_map(self) -> GradedMap:
        return GradedMap(self.coalgebra.module, self.algebra.module, 1,
                         {k: self.images.get(k, {})
                          for k in self.coalgebra.labels})

    def key(self) -> Tuple:
        return tuple(sorted((repr(k), tuple(sorted(
            (repr(l), c.value) for l, c in v.items())))
            for k, v in self.images.items() if v))

    def mc_defect(self, c) -> Vector:
        C, B = self.coalgebra, self.algebra
        r1 = C.ring.one
        X = {c: r1}
        out: Vector = {}
        for (c1, c2), v in C.comultiply(X).items():
            axpy(out, B.mul(self.apply({c1: r1}), self.apply({c2: r1})),
                 sign(C.degree(c1)) * v)
        axpy(out, B.diff(self.apply(X)))
        axpy(out, self.apply(C.diff(X)))
        e = C.eps(X)
        if e:
            axpy(out, B.h, e)
        hc = C.curvature(X)
        if hc:
            axpy(out, B.one, -hc)
        return out

    def to_json(self) -> dict:
        return {'name': self.name, 'images': jsonable(self.images)}


def check_twisting_cochain(tau: TwistingCochain) -> AxiomReport:
    rep = AxiomReport(f'twisting_cochain:{tau.name}')
    C, B = tau.coalgebra, tau.algebra
    for c in C.labels:
        attempt(rep, 'degree', c, lambda: [
            k for k in tau.apply({c: C.ring.one})
            if B.degree(k) != C.degree(c) + 1])
        attempt(rep, 'maurer_cartan', c, lambda: tau.mc_defect(c))
    return rep


def canonical_cochain_cobar(C: CdgCoalgebra, Cb: CobarAlgebra
                            ) -> TwistingCochain:
    """τ_{C,w}(c) = [π_W c]."""
    r1 = C.ring.one
    return TwistingCochain(C, Cb, {c: Cb.generator({c: r1})
                                   for c in C.labels}, 'tau_C')


def canonical_cochain_bar(Br: BarCoalgebra) -> TwistingCochain:
    """τ_{B,v}([e]) = -ṽ_e, zero off tensor weight 1."""
    r1 = Br.ring.one
    images = {}
    for w in Br.labels:
        if len(w) == 1:
            images[w] = scale(Br.lift({w[0]: r1}), -1)
    return TwistingCochain(Br, Br.algebra, images, 'tau_B')


def transport_along_algebra(F: CdgMorphism, tau: TwistingCochain
                            ) -> TwistingCochain:
    """(f, a)∘τ = f∘τ + a∘ε."""
    C = tau.coalgebra
    r1 = C.ring.one
    images = {}
    for c in C.labels:
        out = F.apply(tau.apply({c: r1}))
        e = C.eps({c: r1})
        if e:
            axpy(out, F.a, e)
        images[c] = out
    return TwistingCochain(C, F.target, images, f'{F.name}*{tau.name}')


def transport_along_coalgebra(tau: TwistingCochain, G: CoalgebraMorphism
                              ) -> TwistingCochain:
    """τ∘(g, a) = τ∘g - 1_B·a."""
    C = G.source
    r1 = C.ring.one
    B = tau.algebra
    images = {}
    for c in C.labels:
        try:
            out = tau.apply(G.apply({c: r1}))
        except OutsideWindow:
            continue
        a = G.a_of({c: r1})
        if a:
            axpy(out, B.one, -a)
        images[c] = out
    return TwistingCochain(C, B, images, f'{tau.name}*{G.name}')


def change_of_retraction(B: CdgAlgebra, v: Mapping[Label, Any],
                         v2: Mapping[Label, Any], cap: int = 3
                         ) -> Tuple[BarCoalgebra, BarCoalgebra,
                                    CoalgebraMorphism]:
    """The isomorphism (id, a): Br_v(B) → Br_v′(B), a([e]) = (v′ - v)(e)."""
    Br1 = bar(B, v, cap)
    Br2 = bar(B, v2, cap)
    ring = B.ring
    a = {}
    for e in Br1.letters:
        diff = Br2.v({e: ring.one}) - Br1.v({e: ring.one})
        if diff:
            a[(e,)] = diff
    g = {w: {w: ring.one} for w in Br1.labels}
    return Br1, Br2, CoalgebraMorphism(Br1, Br2, g, a, 'retraction_change')


def change_of_section(C: CdgCoalgebra, w: Vector, w2: Vector,
                      window: Tuple[int, int] = (0, 6), max_len: int = 8
                      ) -> Tuple[CobarAlgebra, CobarAlgebra, CdgMorphism]:
    """The isomorphism (id, -[w′ - w]): Cb_w(C) → Cb_w′(C)."""
    Cb1 = cobar(C, w, window, max_len)
    Cb2 = cobar(C, w2, window, max_len)
    delta = axpy(dict(w2), w, -1)
    a = scale(Cb2.generator(delta), -1)
    f = {u: {u: C.ring.one} for u in Cb1.labels}
    return Cb1, Cb2, CdgMorphism(Cb1, Cb2, f, a, 'section_change')


def twist_algebra(B: CdgAlgebra, a: Vector) -> CdgAlgebra:
    """(B, d + [a, -], h + da + a²), the source of (id, a) into B."""
    r1 = B.ring.one
    d = {}
    for b in B.labels:
        X = {b: r1}
        try:
            out = dict(B.diff(X))
            axpy(out, B.mul(a, X))
            axpy(out, B.mul(X, a), -sign(B.degree(b)))
            d[b] = out
        except OutsideWindow:
            continue
    h = axpy(axpy(dict(B.h), B.diff(a)), B.mul(a, a))
    return CdgAlgebra(B.module, B.unit, B.mult, d, h, f'{B.name}^a')


def bar_functor(B: CdgAlgebra, a: Vector, v: Optional[Mapping] = None,
                cap: int = 3) -> Tuple[BarCoalgebra, BarCoalgebra,
                                       CoalgebraMorphism]:
    """
    Br applied to the weakly strict (id, a): B^a → B.

    The coalgebra morphism inserts copies of -[a] into the gaps of a word;
    its change of connection vanishes. Words whose image would need more
    than `cap` letters with a nonzero coefficient get no entry.
    """
    if any(c.valuation() < 1 for c in a.values()):
        raise ValueError('bar_functor only handles morphisms of the form '
                         '(id, a) with a in mB¹; other weakly strict '
                         'morphisms are not supported')
    Ba = twist_algebra(B, a)
    src = bar(Ba, v, cap)
    tgt = bar(B, v, cap)
    ring = B.ring
    ins = {k: -c for k, c in src.pi(a).items()}
    low = min((c.valuation() for c in ins.values()), default=None)
    g = {}
    for w in src.labels:
        # the first insertion past the cap has coefficient in m^(low*k)
        k = cap - len(w) + 1
        if low is not None and low * k < ring.N:
            continue
        g[w] = _insertions(w, ins, cap, ring)
    return src, tgt, CoalgebraMorphism(src, tgt, g, {}, 'bar_functor')


def _insertions(w: Word, ins: Vector, cap: int,
                ring: LocalRingSpec) -> Vector:
    """Sum over all ways of filling the gaps of w with strings of -[a]."""
    n = len(w)
    room = cap - n
    out: Vector = {}
    # strings of length k from ins, distributed into n+1 gaps
    for total in range(room + 1):
        for counts in _compositions(total, n + 1):
            pieces = []
            for cnt in counts:
                pieces.append(list(itertools.product(ins.items(), repeat=cnt)))
            for choice in itertools.product(*pieces):
                word: Tuple = ()
                coef = ring.one
                for gap, string in enumerate(choice):
                    for k, c in string:
                        word += (k,)
                        coef = coef * c
                    if gap < n:
                        word += (w[gap],)
                if coef:
                    axpy(out, {word: coef})
    return out


def _compositions(total: int, parts: int) -> Iterator[Tuple[int, ...]]:
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


# -- enumeration --------------------------------------------------------------

def enumerate_twisting_cochains(C: CdgCoalgebra, A: CdgAlgebra,
                                budget: int = 200000,
                                residue_condition: Optional[Vector] = None
                                ) -> List[TwistingCochain]:
    """
    All twisting cochains C → A over a finite ring.

    With `residue_condition` = w(1), only cochains with τ(w(1)) in mA are
    kept.

    Raises:
        EnumerationBudgetExceeded
        WindowTruncation: if a target degree of A is not complete
    """
    ring = C.ring
    per_label = []
    for c in C.labels:
        n = C.degree(c) + 1
        if not A.module.complete(n):
            raise WindowTruncation(f'A is incomplete in degree {n}', [n])
        per_label.append(A.module.basis(n))
    sizes = [ring.size ** len(b) for b in per_label]
    check_budget(sizes, budget, 'twisting cochains')
    choices = [enumerate_vectors(ring, b) for b in per_label]
    out = []
    for combo in itertools.product(*choices):
        tau = TwistingCochain(C, A, dict(zip(C.labels, combo)))
        if residue_condition is not None:
            val = tau.apply(residue_condition)
            if any(c.valuation() < 1 for c in val.values()):
                continue
        try:
            if all(not tau.mc_defect(c) for c in C.labels):
                out.append(tau)
        except OutsideWindow:
            raise WindowTruncation('a product needed by the Maurer-Cartan '
                                   'identity is not materialized')
    return out


def _cobar_morphism_ok(Cb: CobarAlgebra, A: CdgAlgebra,
                       fgen: Mapping[Label, Vector], a: Vector) -> bool:
    """Check the morphism equations of (f, a): Cb → A on generators."""
    r1 = A.ring.one

    def f_word(word: Word) -> Vector:
        out = A.one
        for c in word:
            out = A.mul(out, fgen[c])
        return out

    def f_vec(u: Vector) -> Vector:
        out: Vector = {}
        for word, c in u.items():
            axpy(out, f_word(word), c)
        return out

    for c in Cb.letters:
        X = {(c,): r1}
        fx = fgen[c]
        lhs = f_vec(Cb.diff(X))
        rhs = axpy(axpy(A.diff(fx), A.mul(a, fx)), A.mul(fx, a),
                   -sign(Cb.degree((c,))))
        if subtract(lhs, rhs):
            return False
    lhs = f_vec(Cb.h)
    rhs = axpy(axpy(dict(A.h), A.diff(a)), A.mul(a, a))
    return not subtract(lhs, rhs)


def _bar_morphism_ok(C: CdgCoalgebra, Br: BarCoalgebra,
                     g1: Mapping[Label, Vector], a: Mapping[Label, RingElem]
                     ) -> bool:
    """
    The weight-one projection of the coalgebra morphism equations for the
    morphism C → Br determined by g1: C → B_+ and a.
    """
    ring = C.ring
    r1 = ring.one
    B = Br.algebra
    h_pi = Br.pi(B.h)

    def av(x: Vector) -> RingElem:
        total = ring.zero
        for k, c in x.items():
            if a.get(k):
                total = total + c * a[k]
        return total

    def g1v(x: Vector) -> Vector:
        out: Vector = {}
        for k, c in x.items():
            axpy(out, g1.get(k, {}), c)
        return out

    for c in C.labels:
        X = {c: r1}
        mu = C.comultiply(X)
        e = C.eps(X)
        lhs: Vector = {}
        if e:
            axpy(lhs, h_pi, e)
        axpy(lhs, Br.q1(g1v(X)))
        for (c1, c2), v in mu.items():
            axpy(lhs, Br.q2(g1v({c1: r1}), g1v({c2: r1})), v)
        rhs = g1v(C.diff(X))
        for (c1, c2), v in mu.items():
            a1, a2 = av({c1: r1}), av({c2: r1})
            if a1:
                axpy(rhs, g1v({c2: r1}), v * a1)
            if a2:
                axpy(rhs, g1v({c1: r1}), -sign(C.degree(c1)) * v * a2)
        if subtract(lhs, rhs):
            return False
        hl = Br.v(B.h) * e + Br.h1(g1v(X))
        for (c1, c2), v in mu.items():
            hl = hl + v * Br.h2(g1v({c1: r1}), g1v({c2: r1}))
        hr = C.curvature(X) + av(C.diff(X))
        for (c1, c2), v in mu.items():
            hr = hr + v * av({c1: r1}) * av({c2: r1})
        if hl != hr:
            return False
    return True


def _vec_key(v: Vector) -> Tuple:
    return tuple(sorted((repr(k), c.value) for k, c in v.items() if c))


def adjunction_bijection(C: CdgCoalgebra, A: CdgAlgebra,
                         v: Optional[Mapping] = None,
                         w: Optional[Vector] = None, cap: int = 2,
                         cobar_window: Optional[Tuple[int, int]] = None,
                         budget: int = 200000) -> AxiomReport:
    """
    Enumerate wcDG morphisms Cb_w(C) → A, twisting cochains C → A with
    τ(w(1)) in mA, and CDG-coalgebra morphisms C → Br_v(A) with
    g(w(1)) in m·Br, and certify the correspondences between them.

    (f, a) ↦ τ(c) = f([π_W c]) + ε(c) a, with inverse a = τ(w(1)),
    f([c]) = τ(c); (g, a) ↦ τ(c) = -ṽ(g₁(c)) - a(c), with inverse
    g₁ = -π∘τ, a = -v∘τ.

    Returns:
        (AxiomReport): verified_range holds the three cardinalities
    """
    ring = C.ring
    if not ring.is_finite:
        raise ValueError('adjunction_bijection needs a finite ring')
    w = dict(w) if w is not None else default_section(C)
    w = {k: ring.element(c) for k, c in w.items()}
    r1 = ring.one
    rep = AxiomReport(f'adjunction:{C.name}->{A.name}')
    gdegs = [C.degree(c) + 1 for c in C.labels]
    window = cobar_window or (min([0] + [2 * g for g in gdegs]),
                              max([2] + [2 * g for g in gdegs]))
    Cb = cobar(C, w, window, max_len=2)
    Br = bar(A, v, cap)

    taus = enumerate_twisting_cochains(C, A, budget, residue_condition=w)
    tau_keys = {t.key(): t for t in taus}

    # wcDG morphisms from the cobar side
    letters = Cb.letters
    gen_basis = [A.module.basis(Cb.degree((c,))) for c in letters]
    sizes = [ring.size ** len(b) for b in gen_basis]
    a_basis = A.module.basis(1)
    sizes.append(ring.size ** len(a_basis))
    check_budget(sizes, budget, 'cobar morphisms')
    cobar_side = []
    for combo in itertools.product(*(enumerate_vectors(ring, b)
                                     for b in gen_basis)):
        fgen = dict(zip(letters, combo))
        for a in enumerate_vectors(ring, a_basis, 1):
            try:
                if _cobar_morphism_ok(Cb, A, fgen, a):
                    cobar_side.append((fgen, a))
            except OutsideWindow:
                raise WindowTruncation('cobar morphism check left the window')

    # coalgebra morphisms into the bar side
    g_basis = [[(e,) for e in Br.letters if Br.algebra.degree(e) - 1 ==
                C.degree(c)] for c in C.labels]
    a_labels = [c for c in C.labels if C.degree(c) == -1]
    sizes = [ring.size ** len(b) for b in g_basis]
    sizes.append(ring.size ** len(a_labels))
    check_budget(sizes, budget, 'bar morphisms')
    bar_side = []
    for combo in itertools.product(*(enumerate_vectors(ring, b)
                                     for b in g_basis)):
        g1 = {c: {word[0]: coef for word, coef in vec.items()}
              for c, vec in zip(C.labels, combo)}
        g_w = {}
        for k, c in w.items():
            axpy(g_w, g1[k], c)
        if any(c.valuation() < 1 for c in g_w.values()):
            continue
        for avals in itertools.product(list(ring.elements()),
                                       repeat=len(a_labels)):
            a = {k: x for k, x in zip(a_labels, avals) if x}
            try:
                if _bar_morphism_ok(C, Br, g1, a):
                    bar_side.append((g1, a))
            except OutsideWindow:
                raise WindowTruncation('bar morphism check left the cap')

    def tau_from_cobar(fgen, a) -> TwistingCochain:
        images = {}
        for c in C.labels:
            out: Vector = {}
            for word, coef in Cb.generator({c: r1}).items():
                axpy(out, fgen[word[0]], coef)
            e = C.eps({c: r1})
            if e:
                axpy(out, a, e)
            images[c] = out
        return TwistingCochain(C, A, images)

    def cobar_from_tau(tau: TwistingCochain):
        return ({c: tau.apply({c: r1}) for c in letters}, tau.apply(w))

    def tau_from_bar(g1, a) -> TwistingCochain:
        images = {}
        for c in C.labels:
            out = scale(Br.lift(g1[c]), -1)
            if a.get(c):
                axpy(out, A.one, -a[c])
            images[c] = out
        return TwistingCochain(C, A, images)

    def bar_from_tau(tau: TwistingCochain):
        g1, a = {}, {}
        for c in C.labels:
            t = tau.apply({c: r1})
            g1[c] = scale(Br.pi(t), -1)
            av = -Br.v(t)
            if av:
                a[c] = av
        return g1, a

    def same_cobar(x, y):
        return (all(_vec_key(x[0][c]) == _vec_key(y[0][c]) for c in letters)
                and _vec_key(x[1]) == _vec_key(y[1]))

    def same_bar(x, y):
        return (all(_vec_key(x[0][c]) == _vec_key(y[0].get(c, {}))
                    for c in C.labels) and
                _vec_key(x[1]) == _vec_key(y[1]))

    for name, side, to_tau, from_tau, same in (
            ('cobar', cobar_side, tau_from_cobar, cobar_from_tau, same_cobar),
            ('bar', bar_side, tau_from_bar, bar_from_tau, same_bar)):
        images = set()
        for item in side:
            t = to_tau(*item)
            k = t.key()
            if k not in tau_keys:
                rep.fail(f'{name}_lands_in_cochains', jsonable(item[1]))
                continue
            images.add(k)
            if not same(from_tau(t), item):
                rep.fail(f'{name}_round_trip', jsonable(item[1]))
            else:
                rep.ok()
        if len(images) != len(side):
            rep.fail(f'{name}_injective', len(side) - len(images))
        if images != set(tau_keys):
            rep.fail(f'{name}_surjective', len(tau_keys) - len(images))
        for t in taus:
            if to_tau(*from_tau(t)).key() != t.key():
                rep.fail(f'{name}_inverse', t.key())
    rep.verified_range.update({'cobar_morphisms': len(cobar_side),
                               'twisting_cochains': len(taus),
                               'bar_morphisms': len(bar_side),
                               'weight_cap': cap})
    logger.info('adjunction %s: %d / %d / %d', rep.subject, len(cobar_side),
                len(taus), len(bar_side))
    return rep
