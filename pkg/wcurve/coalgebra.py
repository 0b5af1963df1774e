"""
Module for R-free CDG-coalgebras, their comodules and morphisms, the dual
algebra C* and the star actions turning comodules into C*-modules.

Sign conventions:
    coderivation:  μ(dc) = dc₁⊗c₂ + (-1)^|c₁| c₁⊗dc₂
    curvature:     d²(c) = h(c₁)c₂ - c₁h(c₂),  h(dc) = 0
    left comodules:  d²(y) = h(y₋₁)y₀;   right comodules: d²(y) = -y₀h(y₁)
    C*: (φψ)(c) = (-1)^{|ψ||c₁|} φ(c₁)ψ(c₂), dφ = -(-1)^|φ| φ∘d, h_C* = -h
    morphisms (g, a): d(gc) = g(dc) + a(c₁)g(c₂) - (-1)^|c₁| g(c₁)a(c₂),
                      h_D(gc) = h_C(c) + a(dc) + a(c₁)a(c₂)
"""

__all__ = [
    "CdgCoalgebra",
    "CdgComodule",
    "CoalgebraMorphism",
    "check_cdg_coalgebra",
    "check_cdg_comodule",
    "check_coalgebra_morphism",
    "dual_algebra",
    "star_action",
    "comodule_from_star",
    "regular_comodule",
]

import itertools
import logging
from typing import Any, Callable, Dict, Hashable, Mapping, Optional, Tuple

from wcurve.cdg import CdgAlgebra, CdgModule, attempt, sign
from wcurve.errors import OutsideWindow, ZeroCoalgebra
from wcurve.graded import GradedModule
from wcurve.reports import AxiomReport
from wcurve.ring import LocalRingSpec, RingElem
from wcurve.vectors import Vector, axpy, subtract

logger = logging.getLogger(__name__)

Label = Hashable


def _functional(table: Mapping[Label, RingElem], u: Vector,
                ring: LocalRingSpec) -> RingElem:
    total = ring.zero
    for k, c in u.items():
        v = table.get(k)
        if v:
            total = total + c * v
    return total


class CdgCoalgebra:
    """
    A CDG-coalgebra (C, μ, ε, d, h) with a labelled basis.

    Attributes:
        module (GradedModule)
        comult (dict): c -> Vector over pairs (c₁, c₂); a missing entry is
            a comultiplication past the weight cap
        counit (dict): c -> RingElem (absent = 0)
        d (dict): c -> Vector
        h (dict): c -> RingElem, nonzero only in degree -2
        name (str)
    """

    def __init__(self, module: GradedModule,
                 comult: Mapping[Label, Vector],
                 counit: Mapping[Label, Any], d: Mapping[Label, Vector],
                 h: Mapping[Label, Any], name: str = 'C'):
        ring = module.ring
        self.module = module
        self.comult = dict(comult)
        self.counit = {k: ring.element(v) for k, v in counit.items()
                       if ring.element(v)}
        self.d = dict(d)
        self.h = {k: ring.element(v) for k, v in h.items() if ring.element(v)}
        self.name = name
        if not any(c.is_unit() for c in self.counit.values()):
            raise ZeroCoalgebra(f'counit of {name} vanishes modulo m')

    def __repr__(self):
        return f'CdgCoalgebra({self.name}, {self.module!r})'

    @property
    def ring(self) -> LocalRingSpec:
        return self.module.ring

    @property
    def labels(self):
        return self.module.labels

    def degree(self, label) -> int:
        return self.module.degree[label]

    def comultiply(self, u: Vector) -> Vector:
        out: Vector = {}
        for k, c in u.items():
            try:
                img = self.comult[k]
            except KeyError:
                raise OutsideWindow(f'comultiplication of {k!r} is not '
                                    f'materialized')
            axpy(out, img, c)
        return out

    def diff(self, u: Vector) -> Vector:
        out: Vector = {}
        for k, c in u.items():
            try:
                img = self.d[k]
            except KeyError:
                raise OutsideWindow(f'differential of {k!r} is not '
                                    f'materialized')
            axpy(out, img, c)
        return out

    def eps(self, u: Vector) -> RingElem:
        return _functional(self.counit, u, self.ring)

    def curvature(self, u: Vector) -> RingElem:
        return _functional(self.h, u, self.ring)

    @property
    def counit_label(self) -> Optional[Label]:
        """The label e with ε(e) = 1 and ε = 0 elsewhere, if there is one."""
        if len(self.counit) == 1:
            (k, v), = self.counit.items()
            if v == self.ring.one:
                return k
        return None

    def is_weakly_curved(self) -> bool:
        return all(c.valuation() >= 1 for c in self.h.values())

    def residue(self) -> 'CdgCoalgebra':
        def vec(v):
            return {k: c.residue() for k, c in v.items() if c.residue()}
        return CdgCoalgebra(self.module.residue(),
                            {k: vec(v) for k, v in self.comult.items()},
                            {k: c.residue() for k, c in self.counit.items()},
                            {k: vec(v) for k, v in self.d.items()},
                            {k: c.residue() for k, c in self.h.items()},
                            self.name + '/m')


def _tensor_linear(fn_left: Callable[[Label], Vector],
                   fn_right: Callable[[Label], Vector], pairs: Vector,
                   sign_fn: Callable[[Label], int] = lambda k: 1) -> Vector:
    """Apply (f ⊗ g) to a vector of pairs, with sign_fn(first factor)."""
    out: Vector = {}
    for (x, y), c in pairs.items():
        fx, gy = fn_left(x), fn_right(y)
        s = sign_fn(x)
        for kx, cx in fx.items():
            for ky, cy in gy.items():
                axpy(out, {(kx, ky): cx * cy}, s * c)
    return out


def check_cdg_coalgebra(C: CdgCoalgebra) -> AxiomReport:
    """
    Evaluate coassociativity, the counit laws, the coderivation rule,
    ε∘d = 0, the curvature equation, h∘d = 0 and homogeneity.
    """
    rep = AxiomReport(f'cdg_coalgebra:{C.name}')
    M = C.module
    deg = M.degree
    r1 = C.ring.one

    def unit_vec(k):
        return {k: r1}

    def flatten_left(triples):
        out: Vector = {}
        for ((a, b), c), v in triples.items():
            axpy(out, {(a, b, c): v})
        return out

    def flatten_right(triples):
        out: Vector = {}
        for (a, (b, c)), v in triples.items():
            axpy(out, {(a, b, c): v})
        return out

    for c in C.labels:
        X = unit_vec(c)

        def counit_left():
            out: Vector = {}
            for (x, y), v in C.comultiply(X).items():
                e = C.eps(unit_vec(x))
                if e:
                    axpy(out, {y: v * e})
            return subtract(out, X)

        def counit_right():
            out: Vector = {}
            for (x, y), v in C.comultiply(X).items():
                e = C.eps(unit_vec(y))
                if e:
                    axpy(out, {x: v * e})
            return subtract(out, X)

        def coassoc():
            mu = C.comultiply(X)
            left = _tensor_linear(lambda k: C.comultiply(unit_vec(k)),
                                  unit_vec, mu)
            right = _tensor_linear(unit_vec,
                                   lambda k: C.comultiply(unit_vec(k)), mu)
            return subtract(flatten_left(left), flatten_right(right))

        def coderivation():
            mu = C.comultiply(X)
            rhs = _tensor_linear(lambda k: C.diff(unit_vec(k)), unit_vec, mu)
            axpy(rhs, _tensor_linear(unit_vec, lambda k: C.diff(unit_vec(k)),
                                     mu, lambda k: sign(deg[k])))
            return subtract(C.comultiply(C.diff(X)), rhs)

        def curvature():
            out: Vector = {}
            for (x, y), v in C.comultiply(X).items():
                hx = C.curvature(unit_vec(x))
                if hx:
                    axpy(out, {y: v * hx})
                hy = C.curvature(unit_vec(y))
                if hy:
                    axpy(out, {x: v * hy}, -1)
            return subtract(C.diff(C.diff(X)), out)

        attempt(rep, 'd_degree', c, lambda: [k for k in C.diff(X)
                                             if deg[k] != deg[c] + 1])
        attempt(rep, 'comult_degree', c, lambda: [
            k for k in C.comultiply(X) if deg[k[0]] + deg[k[1]] != deg[c]])
        attempt(rep, 'counit_left', c, counit_left)
        attempt(rep, 'counit_right', c, counit_right)
        attempt(rep, 'coassociativity', c, coassoc)
        attempt(rep, 'coderivation', c, coderivation)
        attempt(rep, 'counit_d', c, lambda: C.eps(C.diff(X)))
        attempt(rep, 'curvature', c, curvature)
        attempt(rep, 'h_d', c, lambda: C.curvature(C.diff(X)))
    bad = [k for k in C.h if deg[k] != -2] + [k for k in C.counit
                                               if deg[k] != 0]
    if bad:
        rep.fail('functional_degree', bad)
    rep.verified_range['degrees'] = list(M.window) if M.window else (
        [M.support()[0], M.support()[-1]] if M.support() else [])
    return rep


class CdgComodule:
    """
    A left or right CDG-comodule.

    Attributes:
        coalgebra (CdgCoalgebra)
        module (GradedModule)
        coaction (dict): y -> Vector over (c, y') (left) or (y', c) (right)
        d (dict): y -> Vector
        side (str)
    """

    def __init__(self, coalgebra: CdgCoalgebra, module: GradedModule,
                 coaction: Mapping[Label, Vector], d: Mapping[Label, Vector],
                 side: str = 'left', name: str = 'N'):
        if side not in ('left', 'right'):
            raise ValueError(f"side must be 'left' or 'right', got {side!r}")
        self.coalgebra = coalgebra
        self.module = module
        self.coaction = dict(coaction)
        self.d = dict(d)
        self.side = side
        self.name = name

    def __repr__(self):
        return f'CdgComodule({self.name}, {self.side}, {self.module!r})'

    @property
    def ring(self) -> LocalRingSpec:
        return self.module.ring

    @property
    def labels(self):
        return self.module.labels

    def degree(self, label) -> int:
        return self.module.degree[label]

    def coact(self, u: Vector) -> Vector:
        out: Vector = {}
        for k, c in u.items():
            try:
                img = self.coaction[k]
            except KeyError:
                raise OutsideWindow(f'coaction of {k!r} is not materialized')
            axpy(out, img, c)
        return out

    def diff(self, u: Vector) -> Vector:
        out: Vector = {}
        for k, c in u.items():
            try:
                img = self.d[k]
            except KeyError:
                raise OutsideWindow(f'differential of {k!r} is not '
                                    f'materialized')
            axpy(out, img, c)
        return out


def check_cdg_comodule(N: CdgComodule) -> AxiomReport:
    """Counit, coassociativity, coderivation, curvature and homogeneity."""
    rep = AxiomReport(f'cdg_comodule:{N.name}')
    C = N.coalgebra
    r1 = N.ring.one
    deg, cdeg = N.module.degree, C.module.degree
    left = N.side == 'left'

    def u(k):
        return {k: r1}

    for y in N.labels:
        Y = u(y)

        def counit():
            out: Vector = {}
            for pair, v in N.coact(Y).items():
                c, z = pair if left else (pair[1], pair[0])
                e = C.eps(u(c))
                if e:
                    axpy(out, {z: v * e})
            return subtract(out, Y)

        def coassoc():
            out: Vector = {}
            for pair, v in N.coact(Y).items():
                if left:
                    c, z = pair
                    for (c1, c2), w in C.comultiply(u(c)).items():
                        axpy(out, {(c1, c2, z): v * w})
                    for (c3, z2), w in N.coact(u(z)).items():
                        axpy(out, {(c, c3, z2): v * w}, -1)
                else:
                    z, c = pair
                    for (c1, c2), w in C.comultiply(u(c)).items():
                        axpy(out, {(z, c1, c2): v * w})
                    for (z2, c3), w in N.coact(u(z)).items():
                        axpy(out, {(z2, c3, c): v * w}, -1)
            return out

        def coderivation():
            rhs: Vector = {}
            for pair, v in N.coact(Y).items():
                if left:
                    c, z = pair
                    for k, w in C.diff(u(c)).items():
                        axpy(rhs, {(k, z): v * w})
                    for k, w in N.diff(u(z)).items():
                        axpy(rhs, {(c, k): v * w}, sign(cdeg[c]))
                else:
                    z, c = pair
                    for k, w in N.diff(u(z)).items():
                        axpy(rhs, {(k, c): v * w})
                    for k, w in C.diff(u(c)).items():
                        axpy(rhs, {(z, k): v * w}, sign(deg[z]))
            return subtract(N.coact(N.diff(Y)), rhs)

        def curvature():
            out: Vector = {}
            for pair, v in N.coact(Y).items():
                c, z = pair if left else (pair[1], pair[0])
                hc = C.curvature(u(c))
                if hc:
                    axpy(out, {z: v * hc}, 1 if left else -1)
            return subtract(N.diff(N.diff(Y)), out)

        attempt(rep, 'd_degree', y, lambda: [k for k in N.diff(Y)
                                             if deg[k] != deg[y] + 1])
        attempt(rep, 'counit', y, counit)
        attempt(rep, 'coassociativity', y, coassoc)
        attempt(rep, 'coderivation', y, coderivation)
        attempt(rep, 'curvature', y, curvature)
    return rep


class CoalgebraMorphism:
    """
    A CDG-coalgebra morphism (g, a): C → D.

    Attributes:
        g (dict): c -> Vector in D
        a (dict): c -> RingElem, a functional of degree 1
    """

    def __init__(self, source: CdgCoalgebra, target: CdgCoalgebra,
                 g: Mapping[Label, Vector], a: Optional[Mapping[Label, Any]] = None,
                 name: str = 'g'):
        self.source = source
        self.target = target
        self.g = dict(g)
        ring = source.ring
        self.a = {k: ring.element(v) for k, v in (a or {}).items()
                  if ring.element(v)}
        self.name = name

    @classmethod
    def identity(cls, C: CdgCoalgebra, a=None, target=None
                 ) -> 'CoalgebraMorphism':
        return cls(C, target or C, {k: {k: C.ring.one} for k in C.labels}, a,
                   'id')

    def apply(self, u: Vector) -> Vector:
        out: Vector = {}
        for k, c in u.items():
            try:
                img = self.g[k]
            except KeyError:
                raise OutsideWindow(f'{self.name} of {k!r} is not known')
            axpy(out, img, c)
        return out

    def a_of(self, u: Vector) -> RingElem:
        return _functional(self.a, u, self.source.ring)

    def compose(self, first: 'CoalgebraMorphism') -> 'CoalgebraMorphism':
        """self o first: (g₂, a₂)(g₁, a₁) = (g₂g₁, a₁ + a₂g₁)."""
        ring = first.source.ring
        g, a = {}, dict(first.a)
        for k in first.source.labels:
            try:
                img = first.apply({k: ring.one})
                g[k] = self.apply(img)
            except OutsideWindow:
                continue
            extra = self.a_of(img)
            if extra:
                a[k] = a.get(k, ring.zero) + extra
        return CoalgebraMorphism(first.source, self.target, g, a,
                                 f'{self.name}∘{first.name}')


def check_coalgebra_morphism(G: CoalgebraMorphism) -> AxiomReport:
    """Counit, comultiplicativity and the d- and h-compatibility equations."""
    C, D = G.source, G.target
    rep = AxiomReport(f'coalgebra_morphism:{G.name}')
    r1 = C.ring.one
    cdeg = C.module.degree
    for c in C.labels:
        X = {c: r1}

        def comult():
            lhs = D.comultiply(G.apply(X))
            rhs = _tensor_linear(lambda k: G.apply({k: r1}),
                                 lambda k: G.apply({k: r1}), C.comultiply(X))
            return subtract(lhs, rhs)

        def differential():
            rhs = G.apply(C.diff(X))
            for (x, y), v in C.comultiply(X).items():
                ax = G.a_of({x: r1})
                if ax:
                    axpy(rhs, G.apply({y: r1}), v * ax)
                ay = G.a_of({y: r1})
                if ay:
                    axpy(rhs, G.apply({x: r1}), -sign(cdeg[x]) * v * ay)
            return subtract(D.diff(G.apply(X)), rhs)

        def curvature():
            rhs = C.curvature(X) + G.a_of(C.diff(X))
            for (x, y), v in C.comultiply(X).items():
                rhs = rhs + v * G.a_of({x: r1}) * G.a_of({y: r1})
            return D.curvature(G.apply(X)) - rhs

        attempt(rep, 'counit', c, lambda: D.eps(G.apply(X)) - C.eps(X))
        attempt(rep, 'comultiplicative', c, comult)
        attempt(rep, 'differential', c, differential)
        attempt(rep, 'curvature', c, curvature)
    return rep


def dual_algebra(C: CdgCoalgebra) -> CdgAlgebra:
    """
    C* on the dual basis φ_c (labelled c, degree -|c|).

    (φ_iφ_j)(c_k) = (-1)^{|c_i||c_j|} μ_k^{ij}; the unit is the counit,
    which must be a single dual basis element.

    Raises:
        ValueError: if the counit is not a dual basis element
    """
    unit = C.counit_label
    if unit is None:
        raise ValueError(f'counit of {C.name} is not a dual basis element')
    ring = C.ring
    cdeg = C.module.degree
    module = GradedModule(ring, {k: -cdeg[k] for k in C.labels})
    known = [k for k in C.labels if k in C.comult]
    complete = len(known) == len(C.labels)
    mult: Dict[Tuple[Label, Label], Vector] = {}
    if complete:
        for i, j in itertools.product(C.labels, repeat=2):
            mult[(i, j)] = {}
        for k in C.labels:
            for (i, j), v in C.comult[k].items():
                axpy(mult[(i, j)], {k: v}, sign(cdeg[i] * cdeg[j]))
    d: Dict[Label, Vector] = {k: {} for k in C.labels}
    for k in C.labels:
        if k not in C.d:
            continue
        for i, v in C.d[k].items():
            axpy(d[i], {k: v}, -sign(cdeg[i]))
    h = {k: -v for k, v in C.h.items()}
    return CdgAlgebra(module, unit, mult, d, h, f'{C.name}*')


def star_action(N: CdgComodule, algebra: Optional[CdgAlgebra] = None
                ) -> CdgModule:
    """
    A left comodule as a right C*-module, y·φ = (-1)^{|φ||y|} φ(y₋₁) y₀;
    a right comodule as a left C*-module, φ·y = (-1)^{|φ||y₀|} y₀ φ(y₁).
    """
    C = N.coalgebra
    A = algebra or dual_algebra(C)
    r1 = N.ring.one
    cdeg = C.module.degree
    action = {}
    for y in N.labels:
        try:
            co = N.coact({y: r1})
        except OutsideWindow:
            continue
        for phi in C.labels:
            out: Vector = {}
            for pair, v in co.items():
                if N.side == 'left':
                    c, z = pair
                    if c == phi:
                        axpy(out, {z: v}, sign(cdeg[phi] * N.degree(y)))
                else:
                    z, c = pair
                    if c == phi:
                        axpy(out, {z: v}, sign(cdeg[phi] * N.degree(z)))
            if N.side == 'left':
                action[(y, phi)] = out
            else:
                action[(phi, y)] = out
    side = 'right' if N.side == 'left' else 'left'
    return CdgModule(A, N.module, action, N.d, side, f'{N.name}*')


def comodule_from_star(M: CdgModule, C: CdgCoalgebra) -> CdgComodule:
    """
    Inverse of star_action for a right C*-module of finite rank:
    coaction(y) = sum_i (-1)^{|c_i||y|} c_i ⊗ (y·φ_i).
    """
    if M.side != 'right':
        raise ValueError('comodule_from_star expects a right C*-module')
    r1 = M.ring.one
    cdeg = C.module.degree
    coaction = {}
    for y in M.labels:
        out: Vector = {}
        try:
            for c in C.labels:
                img = M.act({c: r1}, {y: r1})
                for z, v in img.items():
                    axpy(out, {(c, z): v}, sign(cdeg[c] * M.degree(y)))
        except OutsideWindow:
            continue
        coaction[y] = out
    return CdgComodule(C, M.module, coaction, M.d, 'left',
                       M.name.rstrip('*'))


def regular_comodule(C: CdgCoalgebra, side: str = 'left') -> CdgComodule:
    """C as a comodule over itself, coacting by the comultiplication."""
    return CdgComodule(C, C.module, C.comult, C.d, side, f'{C.name}_reg')
