"""
Module for bar resolutions of CDG-modules, semiacyclicity, Ext over a
weakly curved algebra and the homotopy witnesses of the worked examples.

The bar resolution is the totalized sum of B^⊗n⊗M, n = 1..cap, with

    ∂(b₁..bₙ⊗x) = Σ_{j<n} (-1)^{j-1} b₁..b_j b_{j+1}..bₙ⊗x
                  + (-1)^{n+1} b₁..b_{n-1}⊗bₙx              (n >= 2)
    d(b₁..bₙ⊗x) = (-1)^{n-1} [Σ_j (-1)^{|b₁|+..+|b_{j-1}|} b₁..db_j..bₙ⊗x
                              + (-1)^{|b₁|+..+|bₙ|} b₁..bₙ⊗dx]
    δ(b₁..bₙ⊗x) = Σ_j (-1)^{j-1} b₁..b_j⊗h⊗b_{j+1}..bₙ⊗x

A tensor of length n has degree |b₁|+..+|bₙ|+|x|-n+1. As a free module it is
generated by the tensors 1⊗b₂..bₙ⊗x, and b₁⊗b₂..bₙ⊗x is
(-1)^{|b₁|(n-1)} times the basis label (b₁, ((b₂..bₙ), x)).
"""

__all__ = [
    "BarResolution",
    "ExtReport",
    "SemiacyclicReport",
    "bar_resolution",
    "direct_sum",
    "semiacyclic",
    "ext",
    "epsilon_nullhomotopy",
    "kln_vanishing_witness",
]

import itertools
import logging
import warnings
from dataclasses import dataclass, field
from typing import Any, Dict, Hashable, List, Mapping, Optional, Set, Tuple, Union

from pandas import DataFrame

from wcurve import linalg
from wcurve.cdg import (CdgAlgebra, CdgModule, HomComplex, attempt,
                        check_cdg_module, free_module, g_plus_contraction,
                        sign)
from wcurve.errors import (OutsideWindow, PrecisionInsufficient,
                           TruncationWarning)
from wcurve.graded import (FreeComplex, GradedMap, GradedModule,
                           HomologyGroup, find_homotopy, homology_mod_m,
                           is_contracting_homotopy, smith_homology)
from wcurve.reports import AxiomReport, jsonable
from wcurve.ring import RingElem
from wcurve.vectors import Vector, axpy, check_budget, subtract

logger = logging.getLogger(__name__)

Label = Hashable
Tensor = Tuple[Tuple[Label, ...], Label]


def _length_degrees(letter_degrees: Set[int], tail_degrees: Set[int],
                    counts: range, shift: int) -> Set[int]:
    """Degrees s + t - m + shift of m letters (m in counts) and a tail t."""
    out: Set[int] = set()
    sums = {0}
    for m in range(counts.stop):
        if m in counts:
            out |= {s + t - m + shift for s in sums for t in tail_degrees}
        sums = {s + a for s in sums for a in letter_degrees}
    return out


@dataclass
class BarResolution:
    """
    The bar resolution P → M of a left CDG-module, truncated at tensor
    length `cap`.

    Attributes:
        algebra (CdgAlgebra)
        target (CdgModule): the resolved module M
        cap (int): the largest tensor length n
        module (CdgModule): P as a free left module; generators are
            ((b₂..bₙ), x)
        augmentation (GradedMap): P → M, b⊗x ↦ bx on length one
        missing (set, optional): generator degrees of tensors longer than
            the cap; None when they are not bounded degreewise
    """
    algebra: CdgAlgebra
    target: CdgModule
    cap: int
    module: CdgModule
    augmentation: GradedMap
    missing: Optional[Set[int]] = None

    @property
    def ring(self):
        return self.algebra.ring

    def tensors(self, max_length: int) -> List[Tensor]:
        """Every tensor b₁..bₙ⊗x with 1 <= n <= max_length."""
        A, M = self.algebra, self.target
        out = []
        for n in range(1, max_length + 1):
            for bs in itertools.product(A.labels, repeat=n):
                out.extend((bs, x) for x in M.labels)
        return out

    def tensor_degree(self, t: Tensor) -> int:
        bs, x = t
        return (sum(self.algebra.degree(b) for b in bs) + self.target.degree(x)
                - len(bs) + 1)

    def paper_differential(self, t: Tensor, curvature: bool = True,
                           augmented: bool = False) -> Dict[Tensor, RingElem]:
        """
        ∂ + d + δ on one tensor, computed term by term.

        With `augmented` the length-one tensors also map to M (as tensors
        of length zero) and D = -d_M on M itself.

        Raises:
            OutsideWindow: if δ would leave the length cap
        """
        A, M = self.algebra, self.target
        r1 = self.ring.one
        bs, x = t
        n = len(bs)
        out: Dict[Tensor, RingElem] = {}
        if n == 0:
            for z, c in M.diff({x: r1}).items():
                axpy(out, {((), z): c}, -1)
            return out
        for j in range(n - 1):
            prod = A.product(bs[j], bs[j + 1])
            for b, c in prod.items():
                axpy(out, {(bs[:j] + (b,) + bs[j + 2:], x): c}, sign(j))
        if n >= 2 or augmented:
            for z, c in M.act({bs[-1]: r1}, {x: r1}).items():
                axpy(out, {(bs[:-1], z): c}, sign(n + 1))
        outer = sign(n - 1)
        prefix = 0
        for j, b in enumerate(bs):
            for b2, c in A.diff({b: r1}).items():
                axpy(out, {(bs[:j] + (b2,) + bs[j + 1:], x): c},
                     outer * sign(prefix))
            prefix += A.degree(b)
        for z, c in M.diff({x: r1}).items():
            axpy(out, {(bs, z): c}, outer * sign(prefix))
        if curvature and A.h:
            if n + 1 > self.cap:
                raise OutsideWindow(f'curvature insertion into a tensor of '
                                    f'length {n} leaves the cap {self.cap}')
            for j in range(1, n + 1):
                for hb, c in A.h.items():
                    axpy(out, {(bs[:j] + (hb,) + bs[j:], x): c}, sign(j - 1))
        return out

    def to_free(self, vec: Mapping[Tensor, RingElem]) -> Vector:
        """Rewrite a combination of tensors in the basis of the free module."""
        out: Vector = {}
        for (bs, x), c in vec.items():
            s = sign(self.algebra.degree(bs[0]) * (len(bs) - 1))
            axpy(out, {(bs[0], (bs[1:], x)): c}, s)
        return out

    def square_defects(self) -> AxiomReport:
        """
        Independent expansion of D² - h· on tensors, and agreement of the
        term-by-term D with the free module differential.
        """
        rep = AxiomReport(f'bar_resolution_expansion:{self.target.name}')
        A = self.algebra
        r1 = self.ring.one

        def square(t):
            out: Dict[Tensor, RingElem] = {}
            for s, c in self.paper_differential(t).items():
                axpy(out, self.paper_differential(s), c)
            bs, x = t
            for b, c in A.mul(A.h, {bs[0]: r1}).items():
                axpy(out, {((b,) + bs[1:], x): c}, -1)
            return out

        def agreement(t):
            lhs = self.module.diff(self.to_free({t: r1}))
            return subtract(lhs, self.to_free(self.paper_differential(t)))

        for t in self.tensors(self.cap):
            attempt(rep, 'agreement', t, lambda: agreement(t))
            if len(t[0]) + 2 <= self.cap or not A.h:
                attempt(rep, 'square', t, lambda: square(t))
        rep.verified_range['lengths'] = [1, self.cap]
        return rep

    def residue_contraction(self) -> AxiomReport:
        """
        Check Ds + sD = id modulo m for the extra degeneracy s(t) = 1⊗t on
        the augmented complex, on tensors of length below the cap.
        """
        rep = AxiomReport(f'bar_resolution_contraction:{self.target.name}')
        unit = self.algebra.unit
        r1 = self.ring.one

        def s(vec):
            return {((unit,) + bs, x): c for (bs, x), c in vec.items()}

        def D(vec):
            out: Dict[Tensor, RingElem] = {}
            for t, c in vec.items():
                axpy(out, self.paper_differential(t, curvature=False,
                                                  augmented=True), c)
            return out

        def defect(t):
            out = D(s({t: r1}))
            axpy(out, s(D({t: r1})))
            axpy(out, {t: r1}, -1)
            return {k: c.residue() for k, c in out.items() if c.residue()}

        tensors = [((), x) for x in self.target.labels]
        tensors += self.tensors(self.cap - 1)
        for t in tensors:
            attempt(rep, 'extra_degeneracy', t, lambda: defect(t))
        rep.verified_range['lengths'] = [0, self.cap - 1]
        return rep

    def check(self) -> AxiomReport:
        rep = check_cdg_module(self.module)
        rep = rep.merge(self.square_defects())
        aug = AxiomReport(f'augmentation:{self.target.name}')
        dP = self.module.d_map()
        for lab in self.module.labels:
            attempt(aug, 'augmentation_closed', lab, lambda: subtract(
                self.target.diff(self.augmentation.image(lab)),
                self.augmentation.apply(dP.image(lab))))
        rep = rep.merge(aug).merge(self.residue_contraction(),
                                   f'bar_resolution:{self.target.name}')
        return rep

    def hom_complex(self, M: CdgModule) -> Tuple[HomComplex, FreeComplex]:
        """Hom_B(P, M) with the degrees touched by longer tensors flagged."""
        H = HomComplex(self.module, M, check=False)
        C = H.complex
        mdeg = set(M.module.degree.values())
        partial = set(C.module.partial)
        if self.missing is None or not M.module.is_finite():
            partial |= set(C.module.support())
        else:
            partial |= {y - g for y in mdeg for g in self.missing}
        Hm = C.module
        module = GradedModule(Hm.ring, Hm.degree, Hm.window, True, True,
                              partial)
        return H, FreeComplex(module, GradedMap(module, module, 1,
                                                C.d.images), check=False)


def bar_resolution(M: CdgModule, cap: int = 3,
                   budget: int = 200000) -> BarResolution:
    """
    The bar resolution of a left CDG-module over a weakly curved algebra.

    Raises:
        NotWeaklyCurved: if the curvature of the algebra is not in mB
        EnumerationBudgetExceeded: if there are too many generators
    """
    if M.side != 'left':
        raise ValueError('bar_resolution resolves left modules')
    if cap < 1:
        raise ValueError(f'cap must be at least 1, got {cap}')
    A = M.algebra
    A.require_weakly_curved()
    check_budget([len(A.labels) ** (cap - 1) or 1, len(M.labels) or 1],
                 budget, 'bar resolution generators')
    r1 = A.ring.one
    gens = {}
    for n in range(1, cap + 1):
        for bs in itertools.product(A.labels, repeat=n - 1):
            for x in M.labels:
                gens[(bs, x)] = (sum(A.degree(b) for b in bs) + M.degree(x)
                                 - n + 1)
    shell = BarResolution(A, M, cap, None, None)
    d_gen = {}
    for g in gens:
        bs, x = g
        try:
            d_gen[g] = shell.to_free(shell.paper_differential(
                ((A.unit,) + bs, x)))
        except OutsideWindow:
            continue
    P = free_module(A, gens, d_gen, 'left', f'P({M.name})')
    adeg = {A.degree(b) for b in A.labels}
    mdeg = {M.degree(x) for x in M.labels}
    if A.module.is_finite() and M.module.is_finite() and adeg and mdeg:
        degrees = set(P.module.degree.values())
        span = (max(degrees, default=0) - min(degrees, default=0)
                + 2 * (max(adeg) - min(adeg) + max(mdeg) - min(mdeg)) + 2)
        missing = _length_degrees(adeg, mdeg, range(cap, cap + span), 0)
        longer = _length_degrees(adeg, mdeg, range(cap + 1, cap + 1 + span), 1)
        window = (min(degrees), max(degrees))
        partial = {n for n in longer if window[0] <= n <= window[1]}
        below = any(n < window[0] for n in longer)
        above = any(n > window[1] for n in longer)
    else:
        # lengths cannot be bounded degreewise; every degree is cut
        missing = None
        degrees = set(P.module.degree.values()) or {0}
        window = (min(degrees), max(degrees))
        partial = set(range(window[0], window[1] + 1))
        below = above = True
    P.module = GradedModule(A.ring, P.module.degree, window, below, above,
                            partial)
    aug = {}
    for lab in P.module.labels:
        b, (bs, x) = lab
        if bs:
            aug[lab] = {}
            continue
        try:
            aug[lab] = M.act({b: r1}, {x: r1})
        except OutsideWindow:
            continue
    res = BarResolution(A, M, cap, P,
                        GradedMap(P.module, M.module, 0, aug), missing)
    logger.debug('bar resolution of %s: %d generators, cap %d', M.name,
                 len(gens), cap)
    return res


def direct_sum(M: CdgModule, N: CdgModule, name: Optional[str] = None
               ) -> CdgModule:
    """M ⊕ N on the labels (0, x) and (1, y)."""
    if M.algebra is not N.algebra or M.side != N.side:
        raise ValueError('direct_sum needs modules over one algebra on one '
                         'side')
    B = M.algebra
    r1 = M.ring.one
    module = M.module.direct_sum(N.module)
    action, d = {}, {}
    for tag, X in ((0, M), (1, N)):
        for key, vec in X.action.items():
            if X.side == 'left':
                b, x = key
                action[(b, (tag, x))] = {(tag, k): c for k, c in vec.items()}
            else:
                x, b = key
                action[((tag, x), b)] = {(tag, k): c for k, c in vec.items()}
        for x in X.labels:
            try:
                d[(tag, x)] = {(tag, k): c for k, c in
                               X.diff({x: r1}).items()}
            except OutsideWindow:
                continue
    return CdgModule(B, module, action, d, M.side,
                     name or f'{M.name}+{N.name}')


@dataclass
class SemiacyclicReport:
    """
    Residue homology of a module, split into reliable and edge degrees.

    Attributes:
        nonzero (dict): reliable degree -> dimension, for nonzero dimensions
        edge (list): degrees whose residue homology is not determined
    """
    subject: str
    nonzero: Dict[int, int]
    edge: List[int]

    @property
    def acyclic(self) -> bool:
        return not self.nonzero

    def __bool__(self) -> bool:
        return self.acyclic

    def to_dict(self) -> Dict[str, Any]:
        return {'subject': self.subject, 'semiacyclic': self.acyclic,
                'nonzero': {str(n): v for n, v in sorted(self.nonzero.items())},
                'edge': sorted(self.edge)}


def semiacyclic(M: Union[CdgModule, FreeComplex],
                window: Optional[Tuple[int, int]] = None) -> SemiacyclicReport:
    """Whether M/mM is acyclic in every degree it determines."""
    if isinstance(M, CdgModule):
        C, subject = M.residue_complex(), M.name
    else:
        C, subject = M, 'complex'
    with warnings.catch_warnings():
        warnings.simplefilter('ignore', TruncationWarning)
        dims = homology_mod_m(C, window)
    nonzero, edge = {}, []
    for n, v in dims.items():
        if v['dim'] is None or not v['reliable']:
            edge.append(n)
        elif v['dim']:
            nonzero[n] = v['dim']
    logger.debug('semiacyclic %s: nonzero %s, edge %s', subject, nonzero, edge)
    return SemiacyclicReport(subject, nonzero, edge)


@dataclass
class ExtReport:
    """
    Ext over R in a window of degrees.

    Attributes:
        subject (str)
        groups (dict): degree -> HomologyGroup
        ring_table (dict): 'a*b' -> {name: coefficient}, the products of the
            named degree-0 classes written in the named basis
        names (list): the named degree-0 classes
    """
    subject: str
    groups: Dict[int, HomologyGroup]
    ring_table: Dict[str, Dict[str, RingElem]] = field(default_factory=dict)
    names: List[str] = field(default_factory=list)

    @property
    def reliable(self) -> Dict[int, bool]:
        return {n: g.reliable for n, g in sorted(self.groups.items())}

    def factors(self, n: int) -> List[int]:
        return list(self.groups[n].factors)

    def exponent(self) -> int:
        """The least k with eps^k killing every reliable group."""
        return max((max(g.factors, default=0) for g in self.groups.values()
                    if g.reliable), default=0)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'subject': self.subject,
            'degrees': [{'degree': n,
                         'homology': {'factors': list(g.factors)},
                         'reliable': g.reliable}
                        for n, g in sorted(self.groups.items())],
            'ring_table': jsonable(self.ring_table),
        }

    def to_frame(self) -> DataFrame:
        rows = [{'degree': n,
                 'factors': ','.join(str(k) for k in g.factors),
                 'length': g.length,
                 'reliable': g.reliable}
                for n, g in sorted(self.groups.items())]
        df = DataFrame(rows, columns=['degree', 'factors', 'length',
                                      'reliable'])
        return df.set_index('degree')


def _ring_table(H: HomComplex, C: FreeComplex, group: HomologyGroup,
                cycles: Mapping[str, Vector]) -> Dict[str, Dict[str, RingElem]]:
    ring = C.ring
    names = list(cycles)
    for name, f in cycles.items():
        if C.d.apply(f):
            raise ValueError(f'named element {name!r} is not a cycle')
    g = len(group.factors)
    cols = [group.coordinates(cycles[name]) for name in names]
    A = linalg.zeros(ring, g, len(names) + g)
    for j, col in enumerate(cols):
        for i, c in enumerate(col):
            A[i, j] = c
    for i, k in enumerate(group.factors):
        A[i, len(names) + i] = ring.eps_power(k)
    table = {}
    for a, b in itertools.product(names, repeat=2):
        prod = H.compose(cycles[a], cycles[b], H)
        if C.d.apply(prod):
            raise PrecisionInsufficient(f'{a}*{b} is not a cycle')
        x = linalg.solve(A, group.coordinates(prod), ring)
        if x is None:
            raise PrecisionInsufficient(f'{a}*{b} is not in the span of '
                                        f'{names}')
        table[f'{a}*{b}'] = {name: x[j] for j, name in enumerate(names)}
    return table


def ext(L: Union[CdgModule, BarResolution], M: CdgModule,
        window: Optional[Tuple[int, int]] = None,
        cycles: Optional[Mapping[str, Vector]] = None) -> ExtReport:
    """
    Ext_B(L, M) as the homology of Hom_B(L, M), L free or a bar resolution.

    `cycles` names degree-0 cycles of Hom_B(L, L) (so M must be L); their
    products are read off in the homology basis.

    Raises:
        WindowTruncation: if a requested degree needs an unmaterialized
            differential
        PrecisionInsufficient: if a product of named cycles fails to close
    """
    if isinstance(L, BarResolution):
        H, C = L.hom_complex(M)
        subject = f'ext:{L.target.name},{M.name}'
    else:
        H = HomComplex(L, M)
        C = H.complex
        subject = f'ext:{L.name},{M.name}'
    if window is None:
        support = C.module.support()
        window = C.module.window or ((support[0], support[-1]) if support
                                     else (0, 0))
    groups = smith_homology(C, window)
    unreliable = [n for n, grp in groups.items() if not grp.reliable]
    if unreliable:
        warnings.warn(f'{subject}: degrees {unreliable} are edge-unreliable',
                      TruncationWarning)
    table: Dict[str, Dict[str, RingElem]] = {}
    names: List[str] = []
    if cycles:
        if isinstance(L, BarResolution) or L is not M:
            raise ValueError('named cycles need Hom(L, L)')
        zero = groups[0] if 0 in groups else smith_homology(C, (0, 0))[0]
        table = _ring_table(H, C, zero, cycles)
        names = list(cycles)
    logger.info('%s: %d degrees, %d unreliable', subject, len(groups),
                len(unreliable))
    return ExtReport(subject, groups, table, names)


def epsilon_nullhomotopy(M: CdgModule, y: Label, scalar=None
                         ) -> Tuple[GradedMap, AxiomReport]:
    """
    The homotopy h = (y·) with dh + hd = scalar·id, scalar = eps by default.

    On a right module h(x) = (-1)^|x| x·y.

    Raises:
        ValueError: if y does not have degree -1
    """
    B = M.algebra
    if B.degree(y) != -1:
        raise ValueError(f'{y!r} has degree {B.degree(y)}, not -1')
    ring = M.ring
    a = ring.uniformizer if scalar is None else ring.element(scalar)
    r1 = ring.one
    images = {}
    for x in M.labels:
        try:
            img = M.act({y: r1}, {x: r1})
        except OutsideWindow:
            continue
        if M.side == 'right' and M.degree(x) % 2:
            img = {k: -c for k, c in img.items()}
        images[x] = img
    h = GradedMap(M.module, M.module, -1, images)
    d = M.d_map()
    rep = AxiomReport(f'epsilon_nullhomotopy:{M.name}')
    for x in M.labels:
        def defect():
            val = d.apply(h.image(x))
            axpy(val, h.apply(d.image(x)))
            axpy(val, {x: r1}, -a)
            return val
        attempt(rep, 'homotopy', x, defect)
    return h, rep


def kln_vanishing_witness(data) -> AxiomReport:
    """
    Verify that B/mB → M → G⁺(B/mB) is exact, that the first map is
    nullhomotopic through b ↦ x⁻¹d_G(b), and that G⁺(B/mB) is contractible.

    Args:
        data (KlnData): see wcurve.golden.kln_data
    """
    rep = AxiomReport('kln_vanishing')
    L, G = data.quotient, data.g_plus
    dM, dL, dG = data.d_middle, L.d_map(), G.d_map()
    f, p, H = data.inclusion, data.projection, data.homotopy
    hM = data.eps_middle.compose(data.x_middle)
    r1 = data.field.one
    for m in data.middle.labels:
        attempt(rep, 'middle_curvature', m, lambda: subtract(
            dM.apply(dM.image(m)), hM.image(m)))
        attempt(rep, 'projection_closed', m, lambda: subtract(
            p.apply(dM.image(m)), dG.apply(p.image(m))))
    for l in L.labels:
        attempt(rep, 'inclusion_closed', l, lambda: subtract(
            dM.apply(f.image(l)), f.apply(dL.image(l))))
        attempt(rep, 'exact_at_middle', l, lambda: p.apply(f.image(l)))

        def homotopy():
            val = dM.apply(H.image(l))
            axpy(val, H.apply(dL.image(l)))
            return subtract(val, f.image(l))
        attempt(rep, 'homotopy', l, homotopy)

        def linear():
            xl = L.act({data.x: r1}, {l: r1})
            return subtract(H.apply(xl), data.x_middle.apply(H.image(l)))
        attempt(rep, 'homotopy_linear', l, linear)
    for n in data.middle.support():
        if not (data.middle.complete(n) and L.module.complete(n)
                and G.module.complete(n)):
            rep.skip()
            continue
        if data.middle.rank(n) != L.module.rank(n) + G.module.rank(n):
            rep.fail('exact_ranks', n, {'middle': data.middle.rank(n),
                                        'ends': [L.module.rank(n),
                                                 G.module.rank(n)]})
        else:
            rep.ok()
    if not is_contracting_homotopy(dG, g_plus_contraction(G)):
        rep.fail('g_plus_contraction', G.name)
    finite = GradedModule(G.ring, G.module.degree)
    closed = FreeComplex(finite, GradedMap(finite, finite, 1, dG.images))
    s = find_homotopy(closed)
    if s is None:
        rep.fail('g_plus_contractible', G.name)
    else:
        rep.ok()
    rep.verified_range['degrees'] = list(data.middle.window)
    logger.info('kln witness: %d checked, %d skipped', rep.checked,
                rep.skipped)
    return rep
