"""
Module for the functors twisted by a twisting cochain τ: C → B.

    C⊗^τM       left B-module M    -> left C-comodule
    B⊗^τN       left C-comodule N  -> free left B-module
    Hom^τ(C,P)  left B-module P    -> free right C*-module (a contramodule)
    Hom^τ(B,Q)  right C*-module Q  -> left B-module

plus the right-handed M⊗^τC and N⊗^τB, the action of these functors on
module maps, and the isomorphism of Hom complexes behind the duality
between contramodules and modules.

Hom^τ(C, P) is free over C* on the maps p_ε: c ↦ ε(c)p; its basis label
(p, c) is the map c ↦ p. Hom^τ(B, Q) has basis labels (b, q) for b ↦ q.
"""

__all__ = [
    "comodule_from_module",
    "module_from_comodule",
    "contramodule_from_module",
    "module_from_contramodule",
    "comodule_from_right_module",
    "module_from_right_comodule",
    "commutator",
    "is_closed",
    "comodule_map",
    "contramodule_map",
    "check_functoriality",
    "closed_adjunction_counts",
    "duality_hom_isomorphism",
]

import itertools
import logging
from typing import Hashable, Optional, Tuple

from wcurve.barcobar import TwistingCochain
from wcurve.cdg import (CdgAlgebra, CdgModule, HomComplex, attempt,
                        check_cdg_module, free_module, sign)
from wcurve.coalgebra import CdgComodule, check_cdg_comodule, dual_algebra
from wcurve.errors import OutsideWindow
from wcurve.graded import GradedMap, GradedModule
from wcurve.reports import AxiomReport
from wcurve.vectors import (Vector, axpy, check_budget, enumerate_vectors,
                            subtract)

logger = logging.getLogger(__name__)

Label = Hashable


def _verify(report: AxiomReport, check: bool):
    if check:
        report.raise_if_failed()
    logger.debug('%s: %d checked, %d skipped', report.subject,
                 report.checked, report.skipped)


def _product_window(C: GradedModule, M: GradedModule, degrees) -> GradedModule:
    """C⊗M where M may be windowed and C is finite."""
    ring = M.ring
    if M.window is None:
        return GradedModule(ring, degrees)
    cd = [C.degree[c] for c in C.labels]
    lo, hi = M.window[0] + min(cd), M.window[1] + max(cd)
    partial = {n for n in range(lo, hi + 1)
               if not all(M.complete(n - k) for k in cd)}
    return GradedModule(ring, degrees, (lo, hi), M.open_below, M.open_above,
                        partial)


def comodule_from_module(tau: TwistingCochain, M: CdgModule,
                         check: bool = True) -> CdgComodule:
    """
    C⊗^τM with coaction c⊗x ↦ c₁⊗(c₂⊗x) and
    d(c⊗x) = dc⊗x + (-1)^|c| c⊗dx + (-1)^{|c₁|} c₁⊗τ(c₂)x.

    Raises:
        AxiomFailure: if `check` and the comodule axioms fail
    """
    if M.side != 'left':
        raise ValueError('C⊗^τM takes a left module')
    C = tau.coalgebra
    r1 = M.ring.one
    degrees = {(c, x): C.degree(c) + M.degree(x)
               for c in C.labels for x in M.labels}
    module = _product_window(C.module, M.module, degrees)
    coaction, d = {}, {}
    for c, x in degrees:
        mu = C.comultiply({c: r1})
        coaction[(c, x)] = {(c1, (c2, x)): v for (c1, c2), v in mu.items()}
        try:
            out: Vector = {(k, x): v for k, v in C.diff({c: r1}).items()}
            axpy(out, {(c, k): v for k, v in M.diff({x: r1}).items()},
                 sign(C.degree(c)))
            for (c1, c2), v in mu.items():
                img = M.act(tau.apply({c2: r1}), {x: r1})
                axpy(out, {(c1, k): w for k, w in img.items()},
                     sign(C.degree(c1)) * v)
            d[(c, x)] = out
        except OutsideWindow:
            continue
    N = CdgComodule(C, module, coaction, d, 'left', f'C⊗^τ{M.name}')
    _verify(check_cdg_comodule(N), check)
    return N


def module_from_comodule(tau: TwistingCochain, N: CdgComodule,
                         check: bool = True) -> CdgModule:
    """
    B⊗^τN, free on the basis of N, with
    d(b⊗y) = db⊗y + (-1)^|b| b⊗dy + (-1)^{|b|+1} bτ(y₋₁)⊗y₀.
    """
    if N.side != 'left':
        raise ValueError('B⊗^τN takes a left comodule')
    B = tau.algebra
    r1 = N.ring.one
    gens = {y: N.degree(y) for y in N.labels}
    d_gen = {}
    for y in N.labels:
        try:
            out: Vector = {(B.unit, z): v for z, v in N.diff({y: r1}).items()}
            for (c, z), v in N.coact({y: r1}).items():
                for b, w in tau.apply({c: r1}).items():
                    axpy(out, {(b, z): w}, -v)
            d_gen[y] = out
        except OutsideWindow:
            continue
    F = free_module(B, gens, d_gen, 'left', f'B⊗^τ{N.name}')
    _verify(check_cdg_module(F), check)
    return F


def contramodule_from_module(tau: TwistingCochain, P: CdgModule,
                             dual: Optional[CdgAlgebra] = None,
                             check: bool = True) -> CdgModule:
    """
    Hom^τ(C, P) as a free right C*-module with
    d(f) = d_P∘f - (-1)^|f| f∘d_C + τ·f, (τ·f)(c) = (-1)^{|f||c₁|} τ(c₁)f(c₂).

    On generators d(p_ε) = (dp)_ε + sum_c (-1)^{|p||c|} (c ↦ τ(c)p)
    - (-1)^|p| sum_c ε(dc) (c ↦ p).
    """
    if P.side != 'left':
        raise ValueError('Hom^τ(C, P) takes a left module')
    C = tau.coalgebra
    Cs = dual if dual is not None else dual_algebra(C)
    e0 = Cs.unit
    r1 = P.ring.one
    gens = {p: P.degree(p) for p in P.labels}
    d_gen = {}
    for p in P.labels:
        try:
            out: Vector = {(k, e0): v for k, v in P.diff({p: r1}).items()}
            for c in C.labels:
                img = P.act(tau.apply({c: r1}), {p: r1})
                axpy(out, {(k, c): v for k, v in img.items()},
                     sign(gens[p] * C.degree(c)))
                e = C.eps(C.diff({c: r1}))
                if e:
                    axpy(out, {(p, c): e}, -sign(gens[p]))
            d_gen[p] = out
        except OutsideWindow:
            continue
    F = free_module(Cs, gens, d_gen, 'right', f'Hom^τ(C,{P.name})')
    _verify(check_cdg_module(F), check)
    return F


def module_from_contramodule(tau: TwistingCochain, Q: CdgModule,
                             check: bool = True) -> CdgModule:
    """
    Hom^τ(B, Q) for a right C*-module Q, with
    d(f)(b) = d_Q f(b) - (-1)^|f| f(db)
              - (-1)^|f| sum_i (-1)^{|c_i||b|} f(τ(c_i)b)·φ_i
    and (b′f)(b) = (-1)^{|b′|(|f|+|b|)} f(bb′).
    """
    if Q.side != 'right':
        raise ValueError('Hom^τ(B, Q) takes a right C*-module')
    B, C = tau.algebra, tau.coalgebra
    r1 = Q.ring.one
    degrees = {(b, q): Q.degree(q) - B.degree(b)
               for b in B.labels for q in Q.labels}
    Bm = B.module
    window, partial = None, set()
    if Bm.window is not None and degrees:
        lo, hi = min(degrees.values()), max(degrees.values())
        window = (lo, hi)
        partial = set(range(lo, hi + 1))
    module = GradedModule(Q.ring, degrees, window, Bm.window is not None,
                          Bm.window is not None, partial)
    by_degree = {}
    for b in B.labels:
        by_degree.setdefault(B.degree(b), []).append(b)
    taus = {c: tau.apply({c: r1}) for c in C.labels}

    d = {}
    for (b0, q) in degrees:
        fdeg = degrees[(b0, q)]
        sf = sign(fdeg)
        try:
            out: Vector = {(b0, k): v for k, v in Q.diff({q: r1}).items()}
            for b in by_degree.get(B.degree(b0) - 1, []):
                coef = B.diff({b: r1}).get(b0)
                if coef:
                    axpy(out, {(b, q): coef}, -sf)
            for c, tc in taus.items():
                if not tc:
                    continue
                qphi = Q.act({c: r1}, {q: r1})
                for b in by_degree.get(B.degree(b0) - C.degree(c) - 1, []):
                    coef = B.mul(tc, {b: r1}).get(b0)
                    if coef:
                        axpy(out, {(b, k): v for k, v in qphi.items()},
                             -sf * sign(C.degree(c) * B.degree(b)) * coef)
            d[(b0, q)] = out
        except OutsideWindow:
            continue
    action = {}
    for b1 in B.labels:
        for (b0, q), fdeg in degrees.items():
            try:
                out: Vector = {}
                for b in by_degree.get(B.degree(b0) - B.degree(b1), []):
                    coef = B.product(b, b1).get(b0)
                    if coef:
                        axpy(out, {(b, q): coef},
                             sign(B.degree(b1) * (fdeg + B.degree(b))))
                action[(b1, (b0, q))] = out
            except OutsideWindow:
                continue
    M = CdgModule(B, module, action, d, 'left', f'Hom^τ(B,{Q.name})')
    _verify(check_cdg_module(M), check)
    return M


def comodule_from_right_module(tau: TwistingCochain, M: CdgModule,
                               check: bool = True) -> CdgComodule:
    """
    M⊗^τC with coaction x⊗c ↦ (x⊗c₁)⊗c₂ and
    d(x⊗c) = dx⊗c + (-1)^|x| x⊗dc - (-1)^|x| xτ(c₁)⊗c₂.
    """
    if M.side != 'right':
        raise ValueError('M⊗^τC takes a right module')
    C = tau.coalgebra
    r1 = M.ring.one
    degrees = {(x, c): C.degree(c) + M.degree(x)
               for x in M.labels for c in C.labels}
    module = _product_window(C.module, M.module, degrees)
    coaction, d = {}, {}
    for x, c in degrees:
        mu = C.comultiply({c: r1})
        coaction[(x, c)] = {((x, c1), c2): v for (c1, c2), v in mu.items()}
        sx = sign(M.degree(x))
        try:
            out: Vector = {(k, c): v for k, v in M.diff({x: r1}).items()}
            axpy(out, {(x, k): v for k, v in C.diff({c: r1}).items()}, sx)
            for (c1, c2), v in mu.items():
                img = M.act(tau.apply({c1: r1}), {x: r1})
                axpy(out, {(k, c2): w for k, w in img.items()}, -sx * v)
            d[(x, c)] = out
        except OutsideWindow:
            continue
    N = CdgComodule(C, module, coaction, d, 'right', f'{M.name}⊗^τC')
    _verify(check_cdg_comodule(N), check)
    return N


def module_from_right_comodule(tau: TwistingCochain, N: CdgComodule,
                               check: bool = True) -> CdgModule:
    """
    N⊗^τB, free on the basis of N, with
    d(y⊗b) = dy⊗b + (-1)^|y| y⊗db + (-1)^{|y₀|} y₀⊗τ(y₁)b.
    """
    if N.side != 'right':
        raise ValueError('N⊗^τB takes a right comodule')
    B = tau.algebra
    r1 = N.ring.one
    gens = {y: N.degree(y) for y in N.labels}
    d_gen = {}
    for y in N.labels:
        try:
            out: Vector = {(z, B.unit): v for z, v in N.diff({y: r1}).items()}
            for (z, c), v in N.coact({y: r1}).items():
                for b, w in tau.apply({c: r1}).items():
                    axpy(out, {(z, b): w}, sign(N.degree(z)) * v)
            d_gen[y] = out
        except OutsideWindow:
            continue
    F = free_module(B, gens, d_gen, 'right', f'{N.name}⊗^τB')
    _verify(check_cdg_module(F), check)
    return F


# -- functoriality ------------------------------------------------------------

def commutator(d_source: GradedMap, d_target: GradedMap,
               f: GradedMap) -> GradedMap:
    """[d, f] = d∘f - (-1)^|f| f∘d on the labels where both are known."""
    images = {}
    s = sign(f.degree)
    for lab in f.source.labels:
        try:
            out = d_target.apply(f.image(lab))
            axpy(out, f.apply(d_source.image(lab)), -s)
            images[lab] = out
        except OutsideWindow:
            continue
    return GradedMap(f.source, f.target, f.degree + 1, images)


def is_closed(d_source: GradedMap, d_target: GradedMap, f: GradedMap) -> bool:
    return all(not v for v in commutator(d_source, d_target, f).images.values())


def comodule_map(M_tw: CdgComodule, M2_tw: CdgComodule,
                 f: GradedMap) -> GradedMap:
    """id⊗f: C⊗^τM → C⊗^τM₂, c⊗x ↦ (-1)^{|f||c|} c⊗f(x)."""
    C = M_tw.coalgebra
    images = {}
    for (c, x) in M_tw.labels:
        try:
            img = f.image(x)
        except OutsideWindow:
            continue
        s = sign(f.degree * C.degree(c))
        images[(c, x)] = {(c, k): s * v for k, v in img.items()
                          if (c, k) in M2_tw.module}
    return GradedMap(M_tw.module, M2_tw.module, f.degree, images)


def contramodule_map(P_tw: CdgModule, P2_tw: CdgModule,
                     g: GradedMap) -> GradedMap:
    """g∘-: Hom^τ(C, P) → Hom^τ(C, P₂), (c ↦ p) ↦ (c ↦ g(p))."""
    images = {}
    for (p, c) in P_tw.labels:
        try:
            img = g.image(p)
        except OutsideWindow:
            continue
        images[(p, c)] = {(k, c): v for k, v in img.items()
                          if (k, c) in P2_tw.module}
    return GradedMap(P_tw.module, P2_tw.module, g.degree, images)


def check_functoriality(tau: TwistingCochain, M: CdgModule, M2: CdgModule,
                        f: GradedMap, homotopy: Optional[GradedMap] = None
                        ) -> AxiomReport:
    """
    For a B-linear map f: M → M₂ check that id⊗f and f∘- are closed when f
    is, and that [d, id⊗s] = id⊗[d, s] for a supplied homotopy s.
    """
    rep = AxiomReport(f'twisted_functoriality:{tau.name}')
    pairs = [(comodule_from_module(tau, M), comodule_from_module(tau, M2),
              comodule_map),
             (contramodule_from_module(tau, M), contramodule_from_module(tau, M2),
              contramodule_map)]
    closed = is_closed(M.d_map(), M2.d_map(), f)
    for src, tgt, lift in pairs:
        ds = GradedMap(src.module, src.module, 1, src.d)
        dt = GradedMap(tgt.module, tgt.module, 1, tgt.d)
        lifted = commutator(ds, dt, lift(src, tgt, f))
        if closed:
            for lab, v in lifted.images.items():
                if v:
                    rep.fail('closed', (src.name, lab), v)
                else:
                    rep.ok()
        if homotopy is not None:
            expect = lift(src, tgt, commutator(M.d_map(), M2.d_map(),
                                               homotopy))
            got = commutator(ds, dt, lift(src, tgt, homotopy))
            for lab, v in got.images.items():
                if not expect.known(lab):
                    rep.skip()
                    continue
                defect = subtract(v, expect.images[lab])
                if defect:
                    rep.fail('homotopy', (src.name, lab), defect)
                else:
                    rep.ok()
    return rep


def closed_adjunction_counts(tau: TwistingCochain, N: CdgComodule,
                             M: CdgModule, budget: int = 200000
                             ) -> Tuple[int, int]:
    """
    Count closed degree-0 maps B⊗^τN → M and C⊗^τM ← N over a finite ring.

    Both sides are parametrized by R-linear maps g: N → M of degree 0,
    F(b⊗y) = b·g(y) on the module side and G(y) = y₋₁⊗g(y₀) on the
    comodule side.
    """
    ring = M.ring
    if not ring.is_finite:
        raise ValueError('closed_adjunction_counts needs a finite ring')
    r1 = ring.one
    BN = module_from_comodule(tau, N)
    CM = comodule_from_module(tau, M)
    labels = list(N.labels)
    bases = [M.module.basis(N.degree(y)) for y in labels]
    check_budget([ring.size ** len(b) for b in bases], budget,
                    'closed morphisms')
    left = right = 0
    for combo in itertools.product(*(enumerate_vectors(ring, b)
                                     for b in bases)):
        g = dict(zip(labels, combo))

        def F(u: Vector) -> Vector:
            out: Vector = {}
            for (b, y), c in u.items():
                axpy(out, M.act({b: r1}, g[y]), c)
            return out

        def G(u: Vector) -> Vector:
            out: Vector = {}
            for y, c in u.items():
                for (c1, z), v in N.coact({y: r1}).items():
                    axpy(out, {(c1, k): w for k, w in g[z].items()}, c * v)
            return out

        try:
            if all(not subtract(F(BN.generator_diff(y)), M.diff(g[y]))
                   for y in labels):
                left += 1
            if all(not subtract(CM.diff(G({y: r1})), G(N.diff({y: r1})))
                   for y in labels):
                right += 1
        except OutsideWindow:
            raise OutsideWindow('closed morphism check left the window')
    return left, right


def duality_hom_isomorphism(tau: TwistingCochain, P: CdgModule,
                            Q: CdgModule) -> Tuple[AxiomReport, GradedMap]:
    """
    The isomorphism Hom_{C*}(Hom^τ(C, P), Q) ≅ Hom_B(P, Hom^τ(B, Q)) for a
    free left B-module P and a right C*-module Q,
    ((b, u), q) ↦ (-1)^{|b||u|} (u, (b, q)).

    Returns:
        (AxiomReport): bijectivity on basis labels and commutation with d
        (GradedMap): the isomorphism
    """
    if not P.is_free:
        raise ValueError(f'{P.name} must be given as a free module')
    B = tau.algebra
    rep = AxiomReport(f'duality_hom:{P.name},{Q.name}')
    HomC = contramodule_from_module(tau, P, dual=Q.algebra)
    left = HomComplex(HomC, Q)
    X = module_from_contramodule(tau, Q)
    right = HomComplex(P, X)
    images = {}
    for lab in left.module.labels:
        (b, u), q = lab
        target = (u, (b, q))
        if target not in right.module:
            rep.fail('bijective', lab)
            continue
        images[lab] = {target: sign(B.degree(b) * P.generators[u]) * Q.ring.one}
    if len(images) != len(right.module.labels):
        rep.fail('bijective', 'label counts',
                 len(right.module.labels) - len(images))
    phi = GradedMap(left.module, right.module, 0, images)
    for lab in left.module.labels:
        if lab not in images:
            continue
        attempt(rep, 'commutes_with_d', lab, lambda: subtract(
            phi.apply(left.d.image(lab)), right.d.apply(images[lab])))
    rep.verified_range['degrees'] = sorted(set(left.module.degree.values()))
    logger.info('%s: %d checked, %d skipped', rep.subject, rep.checked,
                rep.skipped)
    return rep, phi
