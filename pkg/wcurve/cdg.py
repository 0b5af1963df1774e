"""
Module for R-free CDG-algebras and CDG-modules given by structure tables.

An algebra is a labelled graded basis with a multiplication table, a
differential and a curvature element; modules carry an action table and a
differential. Tables may stop at a degree window: entries that were not
materialized raise OutsideWindow, and the axiom checkers count the affected
tuples as skipped.

Sign conventions:
    d(ab) = d(a)b + (-1)^|a| a d(b),  d²(b) = hb - bh,  d(h) = 0
    left modules:  d²(x) = hx;   right modules: d²(y) = -yh
    Hom:  d(f) = d_M f - (-1)^|f| f d_L,  f(bx) = (-1)^{|f||b|} b f(x)
    morphisms (f, a): f(db) = d f(b) + a f(b) - (-1)^|b| f(b) a,
                      f(h_B) = h_A + d(a) + a²
"""

__all__ = [
    "CdgAlgebra",
    "CdgModule",
    "CdgMorphism",
    "HomComplex",
    "check_cdg_algebra",
    "check_cdg_module",
    "check_cdg_morphism",
    "algebra_from_presentation",
    "free_module",
    "regular_module",
    "hom_complex",
    "tensor_over_B",
    "restrict_scalars",
    "make_G_plus",
    "g_plus_contraction",
    "sign",
]

import itertools
import logging
from typing import (Any, Callable, Dict, Hashable, Mapping, Optional,
                    Sequence, Tuple)

from wcurve.errors import NotWeaklyCurved, OutsideWindow
from wcurve.graded import FreeComplex, GradedMap, GradedModule
from wcurve.reports import AxiomReport, jsonable
from wcurve.ring import LocalRingSpec, RingElem
from wcurve.vectors import Vector, axpy, negate, scale, subtract

logger = logging.getLogger(__name__)

Label = Hashable


def sign(n: int) -> int:
    return -1 if n % 2 else 1


def attempt(report: AxiomReport, axiom: str, witness: Any,
            defect: Callable[[], Any]) -> None:
    """Evaluate one axiom instance; OutsideWindow counts as skipped."""
    try:
        value = defect()
    except OutsideWindow:
        report.skip()
        return
    if value:
        report.fail(axiom, witness, value)
    else:
        report.ok()


def _wrong_degree(module: GradedModule, vec: Vector, expected: int):
    bad = [k for k in vec if module.degree.get(k) != expected]
    return {'labels': bad, 'expected': expected} if bad else None


def _bilinear(table: Mapping[Tuple[Label, Label], Vector], u: Vector,
              v: Vector, what: str) -> Vector:
    out: Vector = {}
    for a, ca in u.items():
        for b, cb in v.items():
            try:
                prod = table[(a, b)]
            except KeyError:
                raise OutsideWindow(f'{what} of {a!r} and {b!r} is not '
                                    f'materialized')
            axpy(out, prod, ca * cb)
    return out


def _linear(table: Mapping[Label, Vector], u: Vector, what: str) -> Vector:
    out: Vector = {}
    for a, c in u.items():
        try:
            img = table[a]
        except KeyError:
            raise OutsideWindow(f'{what} of {a!r} is not materialized')
        axpy(out, img, c)
    return out


class CdgAlgebra:
    """
    A CDG-algebra (B, d, h) with a labelled basis.

    Attributes:
        module (GradedModule): underlying graded module
        unit (label): basis label of the unit element
        mult (dict): (a, b) -> Vector, the product of basis labels
        d (dict): a -> Vector, the differential
        h (Vector): curvature element of degree 2
        name (str)
    """

    def __init__(self, module: GradedModule, unit: Label,
                 mult: Mapping[Tuple[Label, Label], Vector],
                 d: Mapping[Label, Vector], h: Vector, name: str = 'B'):
        if unit not in module:
            raise ValueError(f'unit label {unit!r} is not a basis label')
        if module.degree[unit] != 0:
            raise ValueError('the unit lives in degree 0')
        self.module = module
        self.unit = unit
        self.mult = dict(mult)
        self.d = dict(d)
        self.h = dict(h)
        self.name = name

    def __repr__(self):
        return f'CdgAlgebra({self.name}, {self.module!r})'

    @property
    def ring(self) -> LocalRingSpec:
        return self.module.ring

    @property
    def labels(self) -> Tuple[Label, ...]:
        return self.module.labels

    def degree(self, label) -> int:
        return self.module.degree[label]

    @property
    def one(self) -> Vector:
        return {self.unit: self.ring.one}

    def product(self, a, b) -> Vector:
        return _bilinear(self.mult, {a: self.ring.one}, {b: self.ring.one},
                         f'{self.name} product')

    def mul(self, u: Vector, v: Vector) -> Vector:
        return _bilinear(self.mult, u, v, f'{self.name} product')

    def diff(self, u: Vector) -> Vector:
        return _linear(self.d, u, f'{self.name} differential')

    def d_map(self) -> GradedMap:
        return GradedMap(self.module, self.module, 1, self.d)

    def is_weakly_curved(self) -> bool:
        return all(c.valuation() >= 1 for c in self.h.values())

    def require_weakly_curved(self) -> None:
        if not self.is_weakly_curved():
            raise NotWeaklyCurved(f'curvature of {self.name} has a unit '
                                  f'coefficient: {self.h}')

    def vector_degree(self, u: Vector) -> Optional[int]:
        return self.module.vector_degree(u)

    def _convert(self, ring: LocalRingSpec, fn: Callable[[RingElem], RingElem]
                 ) -> 'CdgAlgebra':
        def vec(v):
            out = {}
            for k, c in v.items():
                c2 = fn(c)
                if c2:
                    out[k] = c2
            return out
        return CdgAlgebra(self.module.over(ring), self.unit,
                          {k: vec(v) for k, v in self.mult.items()},
                          {k: vec(v) for k, v in self.d.items()},
                          vec(self.h), self.name + '/m')

    def residue(self) -> 'CdgAlgebra':
        return self._convert(self.ring.residue_field(), lambda c: c.residue())

    def opposite(self) -> 'CdgAlgebra':
        """B^op with a·b = (-1)^{|a||b|} ba, the same d and curvature -h."""
        deg = self.module.degree
        mult = {(a, b): scale(v, sign(deg[a] * deg[b]))
                for (b, a), v in self.mult.items()}
        return CdgAlgebra(self.module, self.unit, mult, self.d,
                          negate(self.h), self.name + '^op')

    def to_json(self) -> dict:
        return {'name': self.name,
                'ranks': {str(n): r for n, r in self.module.ranks().items()},
                'unit': jsonable(self.unit),
                'h': jsonable(self.h)}


def check_cdg_algebra(B: CdgAlgebra, weakly_curved: bool = False
                      ) -> AxiomReport:
    """
    Evaluate the CDG-algebra axioms on every basis tuple.

    Checks homogeneity, unit laws, associativity, the Leibniz rule,
    d²(b) = hb - bh, d(h) = 0 and d(1) = 0, and with `weakly_curved` that
    every coefficient of h lies in m.
    """
    rep = AxiomReport(f'cdg_algebra:{B.name}')
    M = B.module
    deg = M.degree
    labels = B.labels
    one = B.one

    attempt(rep, 'h_degree', 'h', lambda: _wrong_degree(M, B.h, 2))
    for a in labels:
        attempt(rep, 'd_degree', a,
                lambda: _wrong_degree(M, B.diff({a: B.ring.one}), deg[a] + 1))
        attempt(rep, 'left_unit', a,
                lambda: subtract(B.mul(one, {a: B.ring.one}), {a: B.ring.one}))
        attempt(rep, 'right_unit', a,
                lambda: subtract(B.mul({a: B.ring.one}, one), {a: B.ring.one}))
        attempt(rep, 'curvature', a, lambda: _curvature_defect(B, a))
    for a, b in itertools.product(labels, repeat=2):
        attempt(rep, 'mult_degree', (a, b),
                lambda: _wrong_degree(M, B.product(a, b), deg[a] + deg[b]))
        attempt(rep, 'leibniz', (a, b), lambda: _leibniz_defect(B, a, b))
    for a, b, c in itertools.product(labels, repeat=3):
        attempt(rep, 'associativity', (a, b, c),
                lambda: _assoc_defect(B, a, b, c))
    attempt(rep, 'dh', 'h', lambda: B.diff(B.h))
    attempt(rep, 'd_unit', B.unit, lambda: B.diff(one))
    if weakly_curved:
        bad = {k: c for k, c in B.h.items() if c.valuation() < 1}
        if bad:
            rep.fail('weak_curvature', 'h', bad)
        else:
            rep.ok()
    rep.verified_range['degrees'] = _range(M)
    logger.debug('%s: %d checked, %d skipped', rep.subject, rep.checked,
                 rep.skipped)
    return rep


def _range(M: GradedModule):
    if M.window is not None:
        return list(M.window)
    support = M.support()
    return [support[0], support[-1]] if support else []


def _curvature_defect(B: CdgAlgebra, a) -> Vector:
    x = {a: B.ring.one}
    dd = B.diff(B.diff(x))
    return subtract(dd, subtract(B.mul(B.h, x), B.mul(x, B.h)))


def _leibniz_defect(B: CdgAlgebra, a, b) -> Vector:
    x, y = {a: B.ring.one}, {b: B.ring.one}
    lhs = B.diff(B.mul(x, y))
    rhs = axpy(B.mul(B.diff(x), y), B.mul(x, B.diff(y)),
               sign(B.degree(a)))
    return subtract(lhs, rhs)


def _assoc_defect(B: CdgAlgebra, a, b, c) -> Vector:
    x, y, z = ({k: B.ring.one} for k in (a, b, c))
    return subtract(B.mul(B.mul(x, y), z), B.mul(x, B.mul(y, z)))


class CdgModule:
    """
    A left or right CDG-module over a CdgAlgebra.

    Attributes:
        algebra (CdgAlgebra)
        module (GradedModule)
        action (dict): (b, x) -> Vector for left modules, (x, b) -> Vector
            for right modules
        d (dict): x -> Vector
        side (str): 'left' or 'right'
        generators (dict, optional): for free modules, generator -> degree;
            basis labels are (b, u) (left) or (u, b) (right)
        d_gen (dict, optional): for free modules, u -> d(1⊗u) as a Vector
        truncated (bool): the generator set was cut (e.g. by a weight cap)
    """

    def __init__(self, algebra: CdgAlgebra, module: GradedModule,
                 action: Mapping[Tuple[Label, Label], Vector],
                 d: Mapping[Label, Vector], side: str = 'left',
                 name: str = 'M', generators: Optional[Mapping[Any, int]] = None,
                 d_gen: Optional[Mapping[Any, Vector]] = None,
                 truncated: bool = False):
        if side not in ('left', 'right'):
            raise ValueError(f"side must be 'left' or 'right', got {side!r}")
        self.algebra = algebra
        self.module = module
        self.action = dict(action)
        self.d = dict(d)
        self.side = side
        self.name = name
        self.generators = dict(generators) if generators is not None else None
        self.d_gen = dict(d_gen) if d_gen is not None else None
        self.truncated = truncated

    def __repr__(self):
        return f'CdgModule({self.name}, {self.side}, {self.module!r})'

    @property
    def ring(self) -> LocalRingSpec:
        return self.module.ring

    @property
    def labels(self):
        return self.module.labels

    @property
    def is_free(self) -> bool:
        return self.generators is not None

    def degree(self, label) -> int:
        return self.module.degree[label]

    def generator_diff(self, u) -> Vector:
        """d(1⊗u) for a generator u of a free module."""
        try:
            return self.d_gen[u]
        except KeyError:
            raise OutsideWindow(f'd of generator {u!r} of {self.name} is not '
                                f'materialized')

    def act(self, b: Vector, x: Vector) -> Vector:
        """b·x for left modules, x·b for right modules."""
        if self.side == 'left':
            return _bilinear(self.action, b, x, f'{self.name} action')
        return _bilinear(self.action, x, b, f'{self.name} action')

    def diff(self, x: Vector) -> Vector:
        return _linear(self.d, x, f'{self.name} differential')

    def d_map(self) -> GradedMap:
        return GradedMap(self.module, self.module, 1, self.d)

    def _convert(self, algebra: CdgAlgebra,
                 fn: Callable[[RingElem], RingElem]) -> 'CdgModule':
        def vec(v):
            out = {}
            for k, c in v.items():
                c2 = fn(c)
                if c2:
                    out[k] = c2
            return out
        return CdgModule(algebra, self.module.over(algebra.ring),
                         {k: vec(v) for k, v in self.action.items()},
                         {k: vec(v) for k, v in self.d.items()}, self.side,
                         self.name + '/m', self.generators,
                         None if self.d_gen is None else
                         {k: vec(v) for k, v in self.d_gen.items()},
                         self.truncated)

    def residue(self, algebra: Optional[CdgAlgebra] = None) -> 'CdgModule':
        alg = self.algebra.residue() if algebra is None else algebra
        return self._convert(alg, lambda c: c.residue())

    def residue_complex(self) -> FreeComplex:
        """(M/mM, d); a complex when the algebra is weakly curved."""
        R = self.residue()
        return FreeComplex(R.module, R.d_map())

    def with_algebra(self, algebra: CdgAlgebra) -> 'CdgModule':
        return CdgModule(algebra, self.module, self.action, self.d, self.side,
                         self.name, self.generators, self.d_gen,
                         self.truncated)


def check_cdg_module(M: CdgModule) -> AxiomReport:
    """
    Evaluate the CDG-module axioms: unit, associativity, Leibniz, curvature
    (d²x = hx on the left, d²y = -yh on the right) and homogeneity.
    """
    rep = AxiomReport(f'cdg_module:{M.name}')
    B = M.algebra
    one = B.one
    r1 = M.ring.one
    deg, bdeg = M.module.degree, B.module.degree
    left = M.side == 'left'
    for x in M.labels:
        X = {x: r1}
        attempt(rep, 'd_degree', x,
                lambda: _wrong_degree(M.module, M.diff(X), deg[x] + 1))
        attempt(rep, 'unit', x, lambda: subtract(M.act(one, X), X))
        if left:
            attempt(rep, 'curvature', x, lambda: subtract(
                M.diff(M.diff(X)), M.act(B.h, X)))
        else:
            attempt(rep, 'curvature', x, lambda: axpy(
                M.diff(M.diff(X)), M.act(B.h, X)))
    for b in B.labels:
        Bv = {b: r1}
        for x in M.labels:
            X = {x: r1}
            w = (b, x) if left else (x, b)
            attempt(rep, 'action_degree', w, lambda: _wrong_degree(
                M.module, M.act(Bv, X), bdeg[b] + deg[x]))
            if left:
                # d(bx) = db·x + (-1)^|b| b·dx
                attempt(rep, 'leibniz', w, lambda: subtract(
                    M.diff(M.act(Bv, X)),
                    axpy(M.act(B.diff(Bv), X), M.act(Bv, M.diff(X)),
                         sign(bdeg[b]))))
            else:
                # d(xb) = dx·b + (-1)^|x| x·db
                attempt(rep, 'leibniz', w, lambda: subtract(
                    M.diff(M.act(Bv, X)),
                    axpy(M.act(Bv, M.diff(X)), M.act(B.diff(Bv), X),
                         sign(deg[x]))))
    for b, c in itertools.product(B.labels, repeat=2):
        Bv, Cv = {b: r1}, {c: r1}
        for x in M.labels:
            X = {x: r1}
            if left:
                attempt(rep, 'associativity', (b, c, x), lambda: subtract(
                    M.act(B.mul(Bv, Cv), X), M.act(Bv, M.act(Cv, X))))
            else:
                attempt(rep, 'associativity', (x, b, c), lambda: subtract(
                    M.act(Cv, M.act(Bv, X)), M.act(B.mul(Bv, Cv), X)))
    rep.verified_range['degrees'] = _range(M.module)
    return rep


class CdgMorphism:
    """
    A CDG-algebra morphism (f, a): B → A.

    Attributes:
        source (CdgAlgebra): B
        target (CdgAlgebra): A
        f (dict): basis label of B -> Vector in A
        a (Vector): change of connection, degree 1 in A
    """

    def __init__(self, source: CdgAlgebra, target: CdgAlgebra,
                 f: Mapping[Label, Vector], a: Optional[Vector] = None,
                 name: str = 'f'):
        self.source = source
        self.target = target
        self.f = dict(f)
        self.a = dict(a or {})
        self.name = name

    @classmethod
    def identity(cls, B: CdgAlgebra, a: Optional[Vector] = None
                 ) -> 'CdgMorphism':
        return cls(B, B, {lab: {lab: B.ring.one} for lab in B.labels}, a,
                   'id')

    def apply(self, u: Vector) -> Vector:
        return _linear(self.f, u, f'{self.name}')

    def compose(self, first: 'CdgMorphism') -> 'CdgMorphism':
        """self o first: (g, b)(f, a) = (gf, b + g(a))."""
        f = {}
        for lab in first.source.labels:
            try:
                f[lab] = self.apply(first.apply({lab: first.source.ring.one}))
            except OutsideWindow:
                continue
        a = axpy(dict(self.a), self.apply(first.a))
        return CdgMorphism(first.source, self.target, f, a,
                           f'{self.name}∘{first.name}')

    def is_weakly_strict(self) -> bool:
        return all(c.valuation() >= 1 for c in self.a.values())


def check_cdg_morphism(F: CdgMorphism) -> AxiomReport:
    """Unitality, multiplicativity and the two change-of-connection equations."""
    B, A = F.source, F.target
    rep = AxiomReport(f'cdg_morphism:{F.name}')
    r1 = B.ring.one
    a = F.a
    attempt(rep, 'a_degree', 'a', lambda: _wrong_degree(A.module, a, 1))
    attempt(rep, 'unit', B.unit, lambda: subtract(F.apply(B.one), A.one))
    for b in B.labels:
        X = {b: r1}
        attempt(rep, 'degree', b, lambda: _wrong_degree(
            A.module, F.apply(X), B.degree(b)))
        # f(db) = d f(b) + a f(b) - (-1)^|b| f(b) a
        attempt(rep, 'differential', b, lambda: subtract(
            F.apply(B.diff(X)),
            axpy(axpy(A.diff(F.apply(X)), A.mul(a, F.apply(X))),
                 A.mul(F.apply(X), a), -sign(B.degree(b)))))
    for b, c in itertools.product(B.labels, repeat=2):
        attempt(rep, 'multiplicative', (b, c), lambda: subtract(
            F.apply(B.product(b, c)),
            A.mul(F.apply({b: r1}), F.apply({c: r1}))))
    attempt(rep, 'curvature', 'h', lambda: subtract(
        F.apply(B.h), axpy(axpy(dict(A.h), A.diff(a)), A.mul(a, a))))
    return rep


# -- construction -----------------------------------------------------------

def _reduce_word(word: Tuple[str, ...],
                 rules: Sequence[Tuple[Tuple[str, ...], Dict[Tuple[str, ...], Any]]],
                 ring: LocalRingSpec, max_steps: int = 10000
                 ) -> Dict[Tuple[str, ...], RingElem]:
    """Rewrite a word to normal form using leftmost matches."""
    out: Dict[Tuple[str, ...], RingElem] = {}
    todo = [(word, ring.one)]
    steps = 0
    while todo:
        w, c = todo.pop()
        steps += 1
        if steps > max_steps:
            raise RuntimeError(f'rewriting of {word!r} does not terminate')
        hit = None
        for i in range(len(w)):
            for lhs, rhs in rules:
                if w[i:i + len(lhs)] == lhs:
                    hit = (i, lhs, rhs)
                    break
            if hit:
                break
        if hit is None:
            new = out.get(w, ring.zero) + c
            if new:
                out[w] = new
            else:
                out.pop(w, None)
            continue
        i, lhs, rhs = hit
        for r_word, coef in rhs.items():
            todo.append((w[:i] + tuple(r_word) + w[i + len(lhs):],
                         c * ring.element(coef)))
    return out


def algebra_from_presentation(ring: LocalRingSpec,
                              generators: Sequence[Tuple[str, int]],
                              relations: Sequence[Tuple[Sequence[str],
                                                        Mapping[Tuple[str, ...], Any]]],
                              d: Mapping[str, Mapping[Tuple[str, ...], Any]],
                              h: Mapping[Tuple[str, ...], Any],
                              window: Tuple[int, int],
                              max_word_length: int = 8,
                              name: str = 'B') -> CdgAlgebra:
    """
    Materialize a monomial-style presentation into structure tables.

    Args:
        generators: (name, degree) pairs
        relations: confluent rewrite rules lhs word -> {word: coefficient}
        d: generator -> {word: coefficient}; extended by the Leibniz rule
        h: {word: coefficient}
        window: degrees to materialize
        max_word_length: longest normal word kept

    Returns:
        (CdgAlgebra): basis = normal words (tuples of generator names) in the
            window; the unit is the empty word
    """
    gdeg = dict(generators)
    rules = [(tuple(lhs), {tuple(w): c for w, c in rhs.items()})
             for lhs, rhs in relations]
    lo, hi = window

    def wdeg(w):
        return sum(gdeg[g] for g in w)

    def normal(w):
        return not any(w[i:i + len(l)] == l for l, _ in rules
                       for i in range(len(w)))

    layers = [[()]]
    for _ in range(max_word_length + 1):
        layers.append([w + (g,) for w in layers[-1] for g in gdeg
                       if normal(w + (g,))])
    overflow = layers.pop()
    words = [w for layer in layers for w in layer if lo <= wdeg(w) <= hi]
    degrees = {w: wdeg(w) for w in words}
    everything = [w for layer in layers for w in layer]
    above = any(wdeg(w) > hi for w in everything)
    below = any(wdeg(w) < lo for w in everything)
    partial = set()
    if overflow:
        if all(gdeg[g] > 0 for g in gdeg):
            start = min(wdeg(w) for w in overflow)
            partial = set(range(max(start, lo), hi + 1))
            above = True
        elif all(gdeg[g] < 0 for g in gdeg):
            stop = max(wdeg(w) for w in overflow)
            partial = set(range(lo, min(stop, hi) + 1))
            below = True
        else:
            partial = set(range(lo, hi + 1))
            above = below = True
    module = GradedModule(ring, degrees, window, open_below=below,
                          open_above=above, partial=partial)
    known = set(words)

    def as_vector(combo: Mapping[Tuple[str, ...], RingElem]) -> Vector:
        vec: Vector = {}
        for w, c in combo.items():
            if w not in known:
                raise OutsideWindow(f'normal word {w!r} is outside the window')
            axpy(vec, {w: c})
        return vec

    def product(u, v):
        return as_vector(_reduce_word(u + v, rules, ring))

    mult = {}
    for u in words:
        for v in words:
            try:
                mult[(u, v)] = product(u, v)
            except OutsideWindow:
                continue

    dgen = {g: {tuple(w): ring.element(c) for w, c in d.get(g, {}).items()}
            for g in gdeg}
    dtab = {}
    for w in words:
        try:
            total: Dict[Tuple[str, ...], RingElem] = {}
            for i, g in enumerate(w):
                s = sign(wdeg(w[:i]))
                for dw, c in dgen[g].items():
                    red = _reduce_word(w[:i] + dw + w[i + 1:], rules, ring)
                    for nw, nc in red.items():
                        total[nw] = total.get(nw, ring.zero) + s * c * nc
            dtab[w] = as_vector({k: v for k, v in total.items() if v})
        except OutsideWindow:
            continue
    hvec: Dict[Tuple[str, ...], RingElem] = {}
    for w, c in h.items():
        for nw, nc in _reduce_word(tuple(w), rules, ring).items():
            hvec[nw] = hvec.get(nw, ring.zero) + ring.element(c) * nc
    hvec = as_vector({k: v for k, v in hvec.items() if v})
    logger.debug('presentation %s: %d words in window %s', name, len(words),
                 window)
    return CdgAlgebra(module, (), mult, dtab, hvec, name)


def _free_degrees(B: CdgAlgebra, generators: Mapping[Any, int], side: str):
    degrees = {}
    for u, du in generators.items():
        for b in B.labels:
            key = (b, u) if side == 'left' else (u, b)
            degrees[key] = B.degree(b) + du
    M = B.module
    window, partial = None, set()
    if M.window is not None and generators:
        lo = M.window[0] + min(generators.values())
        hi = M.window[1] + max(generators.values())
        window = (lo, hi)
        partial = {n for n in range(lo, hi + 1)
                   if not all(M.complete(n - du) for du in generators.values())}
    return GradedModule(B.ring, degrees, window, M.open_below, M.open_above,
                        partial)


def free_module(B: CdgAlgebra, generators: Mapping[Any, int],
                d_gen: Mapping[Any, Vector], side: str = 'left',
                name: str = 'F', truncated: bool = False) -> CdgModule:
    """
    The free module B⊗U (left) or U⊗B (right) with d determined by its
    values on generators.

    d_gen[u] is d(1⊗u) written in the basis labels (b, u') (left) or
    (u', b) (right). On the left d(b⊗u) = db⊗u + (-1)^|b| b·d(1⊗u); on the
    right d(u⊗b) = d(u⊗1)·b + (-1)^|u| u⊗db.
    """
    module = _free_degrees(B, generators, side)
    r1 = B.ring.one
    action = {}
    for lab in module.labels:
        for b in B.labels:
            try:
                if side == 'left':
                    c, u = lab
                    prod = B.product(b, c)
                    action[(b, lab)] = {(k, u): v for k, v in prod.items()}
                else:
                    u, c = lab
                    prod = B.product(c, b)
                    action[(lab, b)] = {(u, k): v for k, v in prod.items()}
            except OutsideWindow:
                continue
    F = CdgModule(B, module, action, {}, side, name, generators, d_gen,
                  truncated)
    d = {}
    for lab in module.labels:
        try:
            if side == 'left':
                b, u = lab
                out = {(k, u): v for k, v in B.diff({b: r1}).items()}
                axpy(out, F.act({b: r1}, F.generator_diff(u)),
                     sign(B.degree(b)))
            else:
                u, b = lab
                out = F.act({b: r1}, F.generator_diff(u))
                axpy(out, {(u, k): v for k, v in B.diff({b: r1}).items()},
                     sign(generators[u]))
            d[lab] = out
        except OutsideWindow:
            continue
    F.d = d
    return F


def regular_module(B: CdgAlgebra, side: str = 'left') -> CdgModule:
    """B as a free module over itself on one generator '1' of degree 0."""
    return free_module(B, {'1': 0}, {'1': {}}, side, name=f'{B.name}_reg')


class HomComplex:
    """
    Hom_B(L, M) for a free CDG-module L and a CDG-module M on the same side.

    Basis label (u, y) is the map sending the generator u to the basis
    element y of M (and the other generators to 0); its degree is
    |y| - |u|.
    """

    def __init__(self, L: CdgModule, M: CdgModule, check: bool = True):
        if not L.is_free:
            raise ValueError(f'{L.name} is not given as a free module')
        if L.side != M.side:
            raise ValueError('Hom needs two modules on the same side')
        self.L = L
        self.M = M
        gens = L.generators
        degrees = {(u, y): M.degree(y) - du for u, du in gens.items()
                   for y in M.labels}
        Mm = M.module
        window, partial = None, set()
        if degrees:
            lo, hi = min(degrees.values()), max(degrees.values())
            if Mm.window is not None:
                lo = min(lo, Mm.window[0] - max(gens.values()))
                hi = max(hi, Mm.window[1] - min(gens.values()))
            window = (lo, hi)
            partial = {n for n in range(lo, hi + 1)
                       if L.truncated or not all(Mm.complete(n + du)
                                                 for du in gens.values())}
        module = GradedModule(M.ring, degrees, window,
                              Mm.open_below or L.truncated,
                              Mm.open_above or L.truncated, partial)
        self.module = module
        d = {}
        for lab in module.labels:
            try:
                d[lab] = self._d_basis(lab)
            except OutsideWindow:
                continue
        self.complex = FreeComplex(module, GradedMap(module, module, 1, d),
                                   check=check)

    def _d_basis(self, lab) -> Vector:
        L, M = self.L, self.M
        u, y = lab
        r1 = M.ring.one
        fdeg = self.module.degree[lab]
        out: Vector = {(u, z): c for z, c in M.diff({y: r1}).items()}
        bdegs = {L.algebra.degree(b) for b in L.algebra.labels}
        for u2, du2 in L.generators.items():
            # an unknown d(1⊗u2) can only reach u through degree |u2| + 1
            if u2 not in L.d_gen and du2 + 1 - L.generators[u] in bdegs:
                raise OutsideWindow(f'd of generator {u2!r} is unknown')
        for u2, dg in L.d_gen.items():
            for key, c in dg.items():
                if L.side == 'left':
                    b, u1 = key
                    if u1 != u:
                        continue
                    s = -sign(fdeg) * sign(fdeg * L.algebra.degree(b))
                    img = M.act({b: r1}, {y: r1})
                else:
                    u1, b = key
                    if u1 != u:
                        continue
                    s = -sign(fdeg)
                    img = M.act({b: r1}, {y: r1})
                axpy(out, {(u2, z): v for z, v in img.items()}, s * c)
        return out

    @property
    def d(self) -> GradedMap:
        return self.complex.d

    def evaluate(self, f: Vector, x) -> Vector:
        """f(x) for a basis label x of L."""
        L, M = self.L, self.M
        r1 = M.ring.one
        if L.side == 'left':
            b, u = x
        else:
            u, b = x
        out: Vector = {}
        for (u1, y), c in f.items():
            if u1 != u:
                continue
            if L.side == 'left':
                s = sign(self.module.degree[(u1, y)] * L.algebra.degree(b))
                axpy(out, M.act({b: r1}, {y: r1}), s * c)
            else:
                axpy(out, M.act({b: r1}, {y: r1}), c)
        return out

    def from_values(self, values: Mapping[Any, Vector]) -> Vector:
        """The Hom element sending generator u to values[u]."""
        out: Vector = {}
        for u, vec in values.items():
            axpy(out, {(u, y): c for y, c in vec.items()})
        return out

    def compose(self, f: Vector, g: Vector, inner: 'HomComplex') -> Vector:
        """f∘g for f in Hom(L, M) and g in inner = Hom(K, L)."""
        out: Vector = {}
        for (u, y), c in g.items():
            axpy(out, {(u, z): v for z, v in self.evaluate(f, y).items()}, c)
        return out


def hom_complex(L: CdgModule, M: CdgModule) -> HomComplex:
    return HomComplex(L, M)


def tensor_over_B(N: CdgModule, M: CdgModule) -> FreeComplex:
    """
    N ⊗_B M for a right module N and a left module M, one of them free.

    With N = U⊗B free the labels are (u, x) and
    d(u⊗x) = sum c·u'⊗(b·x) + (-1)^|u| u⊗dx over d(u⊗1) = sum c·u'⊗b.
    With M = B⊗U free the labels are (y, u) and
    d(y⊗u) = dy⊗u + (-1)^|y| sum c·(y·b)⊗u'.
    """
    if N.side != 'right' or M.side != 'left':
        raise ValueError('tensor_over_B takes a right module and a left one')
    r1 = M.ring.one
    if N.is_free:
        gens = N.generators
        degrees = {(u, x): du + M.degree(x) for u, du in gens.items()
                   for x in M.labels}
        module = GradedModule(M.ring, degrees, _shifted_window(M.module, gens),
                              M.module.open_below, M.module.open_above,
                              _shifted_partial(M.module, gens))
        d = {}
        for (u, x) in module.labels:
            try:
                out: Vector = {}
                for (u1, b), c in N.generator_diff(u).items():
                    axpy(out, {(u1, z): v for z, v in
                               M.act({b: r1}, {x: r1}).items()}, c)
                axpy(out, {(u, z): v for z, v in M.diff({x: r1}).items()},
                     sign(gens[u]))
                d[(u, x)] = out
            except OutsideWindow:
                continue
    elif M.is_free:
        gens = M.generators
        degrees = {(y, u): N.degree(y) + du for y in N.labels
                   for u, du in gens.items()}
        module = GradedModule(N.ring, degrees, _shifted_window(N.module, gens),
                              N.module.open_below, N.module.open_above,
                              _shifted_partial(N.module, gens))
        d = {}
        for (y, u) in module.labels:
            try:
                out = {(z, u): v for z, v in N.diff({y: r1}).items()}
                for (b, u1), c in M.generator_diff(u).items():
                    axpy(out, {(z, u1): v for z, v in
                               N.act({b: r1}, {y: r1}).items()},
                         sign(N.degree(y)) * c)
                d[(y, u)] = out
            except OutsideWindow:
                continue
    else:
        raise ValueError('tensor_over_B needs one of the factors free')
    return FreeComplex(module, GradedMap(module, module, 1, d))


def _shifted_window(M: GradedModule, gens: Mapping[Any, int]):
    if M.window is None or not gens:
        return None
    return (M.window[0] + min(gens.values()), M.window[1] + max(gens.values()))


def _shifted_partial(M: GradedModule, gens: Mapping[Any, int]):
    win = _shifted_window(M, gens)
    if win is None:
        return set()
    return {n for n in range(win[0], win[1] + 1)
            if not all(M.complete(n - du) for du in gens.values())}


def restrict_scalars(F: CdgMorphism, M: CdgModule) -> CdgModule:
    """
    The B-module structure on an A-module M along (f, a): B → A.

    b·x = f(b)·x and d'(x) = d(x) + a·x on the left;
    y·b = y·f(b) and d'(y) = d(y) - (-1)^|y| y·a on the right.
    """
    B = F.source
    r1 = M.ring.one
    action = {}
    for b in B.labels:
        for x in M.labels:
            try:
                img = M.act(F.apply({b: r1}), {x: r1})
            except OutsideWindow:
                continue
            action[(b, x) if M.side == 'left' else (x, b)] = img
    d = {}
    for x in M.labels:
        try:
            out = dict(M.diff({x: r1}))
            if M.side == 'left':
                axpy(out, M.act(F.a, {x: r1}))
            else:
                axpy(out, M.act(F.a, {x: r1}), -sign(M.degree(x)))
            d[x] = out
        except OutsideWindow:
            continue
    return CdgModule(B, M.module, action, d, M.side, f'{F.name}^*{M.name}')


def make_G_plus(L: CdgModule) -> CdgModule:
    """
    G⁺(L) for a left graded B-module L (its differential is ignored).

    Basis ('u', l) of degree |l| stands for l, and ('w', l) of degree
    |l| + 1 stands for d(l). Then d('u', l) = ('w', l),
    d('w', l) = ('u', h·l), b·('u', l) = ('u', b·l) and
    b·('w', l) = (-1)^|b| (('w', b·l) - ('u', db·l)).
    """
    if L.side != 'left':
        raise ValueError('G+ is built from left modules')
    B = L.algebra
    r1 = L.ring.one
    Lm = L.module
    degrees = {('u', l): Lm.degree[l] for l in Lm.labels}
    degrees.update({('w', l): Lm.degree[l] + 1 for l in Lm.labels})
    window = None if Lm.window is None else (Lm.window[0], Lm.window[1] + 1)
    partial = set(Lm.partial) | {n + 1 for n in Lm.partial}
    if window is not None and Lm.open_below:
        partial.add(window[0])
    if window is not None and Lm.open_above:
        partial.add(window[1])
    module = GradedModule(L.ring, degrees, window, Lm.open_below,
                          Lm.open_above, partial)

    def tag(t, vec):
        return {(t, k): c for k, c in vec.items()}

    action = {}
    for b in B.labels:
        sb = sign(B.degree(b))
        for l in Lm.labels:
            try:
                bl = L.act({b: r1}, {l: r1})
                action[(b, ('u', l))] = tag('u', bl)
            except OutsideWindow:
                pass
            try:
                out = tag('w', L.act({b: r1}, {l: r1}))
                axpy(out, tag('u', L.act(B.diff({b: r1}), {l: r1})), -1)
                action[(b, ('w', l))] = scale(out, sb)
            except OutsideWindow:
                pass
    d = {}
    for l in Lm.labels:
        d[('u', l)] = {('w', l): r1}
        try:
            d[('w', l)] = tag('u', L.act(B.h, {l: r1}))
        except OutsideWindow:
            pass
    return CdgModule(B, module, action, d, 'left', f'G+({L.name})')


def g_plus_contraction(G: CdgModule) -> GradedMap:
    """The contracting homotopy s('w', l) = ('u', l), s('u', l) = 0."""
    r1 = G.ring.one
    images = {}
    for lab in G.labels:
        t, l = lab
        images[lab] = {('u', l): r1} if t == 'w' else {}
    return GradedMap(G.module, G.module, -1, images)
