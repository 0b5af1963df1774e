"""
Module for Z-graded free modules of finite support, homogeneous maps,
complexes of free modules and their homology.

Basis elements carry arbitrary hashable labels. A map stores the image of
every basis label it knows; a label without a stored image lies past the
materialized window, and touching it raises OutsideWindow.
"""

__all__ = [
    "GradedModule",
    "GradedMap",
    "FreeComplex",
    "HomologyGroup",
    "tensor",
    "tensor_maps",
    "hom_internal",
    "reduce_mod_m",
    "is_isomorphism",
    "homology_mod_m",
    "find_homotopy",
    "is_contractible",
    "homotopy_by_linear_solve",
    "is_contracting_homotopy",
    "smith_homology",
    "fold_mod2",
]

import logging
import warnings
from collections import defaultdict
from dataclasses import dataclass, field
from typing import (Any, Callable, Dict, Hashable, Iterable, List, Mapping,
                    Optional, Sequence, Tuple)

import numpy as np

from wcurve import linalg
from wcurve.errors import (OutsideWindow, RankMismatch, TruncationWarning,
                           WindowTruncation)
from wcurve.ring import LocalRingSpec, RingElem
from wcurve.vectors import Vector, axpy

logger = logging.getLogger(__name__)

Label = Hashable


class GradedModule:
    """
    A free graded module with a labelled basis.

    Attributes:
        ring (LocalRingSpec): coefficient ring
        labels (tuple): basis labels in a fixed order
        degree (dict): label -> integer degree
        window (tuple, optional): (lo, hi) degrees materialized; None for a
            module of finite support given in full
        open_below, open_above (bool): whether basis elements exist beyond
            the window on that side
        partial (frozenset): degrees inside the window whose basis is known
            to be incomplete (e.g. cut by a word-length cap)
    """

    def __init__(self, ring: LocalRingSpec, degrees: Mapping[Label, int],
                 window: Optional[Tuple[int, int]] = None,
                 open_below: bool = False, open_above: bool = False,
                 partial: Iterable[int] = ()):
        self.ring = ring
        self.labels = tuple(degrees)
        self.degree = dict(degrees)
        self.window = tuple(window) if window is not None else None
        self.open_below = open_below
        self.open_above = open_above
        self.partial = frozenset(partial)
        by_degree = defaultdict(list)
        for lab in self.labels:
            by_degree[self.degree[lab]].append(lab)
        self._by_degree = dict(by_degree)
        self._index = {n: {lab: i for i, lab in enumerate(labs)}
                       for n, labs in self._by_degree.items()}

    @classmethod
    def from_ranks(cls, ring: LocalRingSpec,
                   ranks: Mapping[int, int]) -> 'GradedModule':
        degrees = {}
        for n in sorted(ranks):
            for i in range(int(ranks[n])):
                degrees[(n, i)] = int(n)
        return cls(ring, degrees)

    def __contains__(self, label) -> bool:
        return label in self.degree

    def __len__(self) -> int:
        return len(self.labels)

    def __repr__(self):
        return f'GradedModule({self.ring.label}, ranks={self.ranks()})'

    def basis(self, n: int) -> List[Label]:
        return self._by_degree.get(n, [])

    def rank(self, n: int) -> int:
        return len(self.basis(n))

    def ranks(self) -> Dict[int, int]:
        return {n: len(self._by_degree[n]) for n in sorted(self._by_degree)}

    def support(self) -> List[int]:
        return sorted(self._by_degree)

    def index(self, n: int) -> Dict[Label, int]:
        return self._index.get(n, {})

    def complete(self, n: int) -> bool:
        """Whether every basis element of degree n is materialized."""
        if n in self.partial:
            return False
        if self.window is None:
            return True
        lo, hi = self.window
        if n < lo:
            return not self.open_below
        if n > hi:
            return not self.open_above
        return True

    def is_finite(self) -> bool:
        return not (self.open_below or self.open_above or self.partial)

    def vector(self, n: int, column: Sequence[RingElem]) -> Vector:
        """The vector with coordinates `column` in the degree-n basis."""
        return {lab: c for lab, c in zip(self.basis(n), column) if c}

    def column(self, n: int, vec: Vector) -> List[RingElem]:
        idx = self.index(n)
        col = [self.ring.zero] * len(idx)
        for key, c in vec.items():
            if key not in idx:
                raise ValueError(f'{key!r} is not a degree-{n} basis label')
            col[idx[key]] = c
        return col

    def vector_degree(self, vec: Vector) -> Optional[int]:
        degs = {self.degree[k] for k in vec}
        if len(degs) > 1:
            raise ValueError(f'vector is not homogeneous: degrees {degs}')
        return degs.pop() if degs else None

    def shift(self, k: int) -> 'GradedModule':
        """The shift M[k] with (M[k])^n = M^{n+k}."""
        window = None if self.window is None else (self.window[0] - k,
                                                   self.window[1] - k)
        return GradedModule(self.ring, {lab: d - k for lab, d in
                                        self.degree.items()}, window,
                            self.open_below, self.open_above,
                            {n - k for n in self.partial})

    def direct_sum(self, other: 'GradedModule') -> 'GradedModule':
        degrees = {(0, lab): d for lab, d in self.degree.items()}
        degrees.update({(1, lab): d for lab, d in other.degree.items()})
        window, ob, oa = _merge_windows(self, other)
        return GradedModule(self.ring, degrees, window, ob, oa,
                            self.partial | other.partial)

    def over(self, ring: LocalRingSpec) -> 'GradedModule':
        return GradedModule(ring, self.degree, self.window, self.open_below,
                            self.open_above, self.partial)

    def residue(self) -> 'GradedModule':
        return self.over(self.ring.residue_field())

    def to_json(self) -> dict:
        return {'graded': {'ranks': {str(n): r for n, r in
                                     self.ranks().items()}}}


def _merge_windows(M: GradedModule, N: GradedModule):
    if M.window is None and N.window is None:
        return None, False, False
    wins = [w for w in (M.window, N.window) if w is not None]
    lo = min(w[0] for w in wins)
    hi = max(w[1] for w in wins)
    return (lo, hi), M.open_below or N.open_below, M.open_above or N.open_above


class GradedMap:
    """
    A homogeneous R-linear map given by the images of basis labels.

    Attributes:
        source, target (GradedModule)
        degree (int)
        images (dict): label -> Vector in the target; labels missing from
            the dict have unknown images
    """

    def __init__(self, source: GradedModule, target: GradedModule,
                 degree: int, images: Mapping[Label, Vector]):
        self.source = source
        self.target = target
        self.degree = degree
        self.images = {lab: dict(v) for lab, v in images.items()}

    def __repr__(self):
        return (f'GradedMap(degree={self.degree}, known={len(self.images)}/'
                f'{len(self.source)})')

    @property
    def ring(self) -> LocalRingSpec:
        return self.source.ring

    def known(self, label) -> bool:
        return label in self.images

    def unknown_labels(self) -> List[Label]:
        return [lab for lab in self.source.labels if lab not in self.images]

    def image(self, label) -> Vector:
        try:
            return self.images[label]
        except KeyError:
            raise OutsideWindow(f'image of {label!r} is not materialized')

    def apply(self, vec: Vector) -> Vector:
        out: Vector = {}
        for lab, c in vec.items():
            axpy(out, self.image(lab), c)
        return out

    __call__ = apply

    def block(self, n: int) -> np.ndarray:
        """Matrix of the component source^n -> target^{n+degree}."""
        src = self.source.basis(n)
        tgt_idx = self.target.index(n + self.degree)
        out = linalg.zeros(self.ring, len(tgt_idx), len(src))
        for j, lab in enumerate(src):
            for key, c in self.image(lab).items():
                out[tgt_idx[key], j] = c
        return out

    def block_known(self, n: int) -> bool:
        return all(lab in self.images for lab in self.source.basis(n))

    @classmethod
    def from_blocks(cls, source: GradedModule, target: GradedModule,
                    degree: int, blocks: Mapping[int, np.ndarray]) -> 'GradedMap':
        images = {}
        for n in source.support():
            src = source.basis(n)
            tgt = target.basis(n + degree)
            mat = blocks.get(n)
            for j, lab in enumerate(src):
                if mat is None:
                    images[lab] = {}
                    continue
                images[lab] = {tgt[i]: mat[i, j] for i in range(len(tgt))
                               if mat[i, j]}
        return cls(source, target, degree, images)

    @classmethod
    def identity(cls, module: GradedModule, scalar=None) -> 'GradedMap':
        one = module.ring.one if scalar is None else module.ring.element(scalar)
        return cls(module, module, 0,
                   {lab: ({lab: one} if one else {}) for lab in module.labels})

    @classmethod
    def zero(cls, source: GradedModule, target: GradedModule,
             degree: int) -> 'GradedMap':
        return cls(source, target, degree, {lab: {} for lab in source.labels})

    def compose(self, other: 'GradedMap') -> 'GradedMap':
        """self o other; images stay unknown where either factor is."""
        images = {}
        for lab in other.source.labels:
            try:
                images[lab] = self.apply(other.image(lab))
            except OutsideWindow:
                continue
        return GradedMap(other.source, self.target,
                         self.degree + other.degree, images)

    def __add__(self, other: 'GradedMap') -> 'GradedMap':
        if self.degree != other.degree:
            raise ValueError('cannot add maps of different degrees')
        images = {}
        for lab in self.source.labels:
            if lab in self.images and lab in other.images:
                images[lab] = axpy(dict(self.images[lab]), other.images[lab])
        return GradedMap(self.source, self.target, self.degree, images)

    def scaled(self, a) -> 'GradedMap':
        a = self.ring.element(a)
        return GradedMap(self.source, self.target, self.degree,
                         {lab: {k: a * c for k, c in v.items() if a * c}
                          for lab, v in self.images.items()})

    def __neg__(self) -> 'GradedMap':
        return self.scaled(-1)

    def __sub__(self, other: 'GradedMap') -> 'GradedMap':
        return self + (-other)

    def equals(self, other: 'GradedMap', labels: Optional[Iterable] = None
               ) -> bool:
        """Compare on `labels` (default: labels known to both maps)."""
        if labels is None:
            labels = [lab for lab in self.images if lab in other.images]
        for lab in labels:
            if self.image(lab) != other.image(lab):
                return False
        return True

    def is_zero(self) -> bool:
        return not any(self.images.values())

    def over(self, ring: LocalRingSpec,
             convert: Callable[[RingElem], RingElem]) -> 'GradedMap':
        images = {}
        for lab, v in self.images.items():
            w = {}
            for k, c in v.items():
                c2 = convert(c)
                if c2:
                    w[k] = c2
            images[lab] = w
        return GradedMap(self.source.over(ring), self.target.over(ring),
                         self.degree, images)

    def residue(self) -> 'GradedMap':
        return self.over(self.ring.residue_field(), lambda c: c.residue())


class FreeComplex:
    """
    A free graded module with a differential of degree +1.

    Raises:
        ValueError: if d o d is nonzero on a label where it is computable
    """

    def __init__(self, module: GradedModule, d: GradedMap, check: bool = True):
        if d.degree != 1:
            raise ValueError(f'a differential has degree 1, got {d.degree}')
        self.module = module
        self.d = d
        if check:
            bad = self.square_defect()
            if bad:
                lab, defect = bad[0]
                raise ValueError(f'd o d is nonzero on {lab!r}: {defect}')

    @property
    def ring(self) -> LocalRingSpec:
        return self.module.ring

    def __repr__(self):
        return f'FreeComplex({self.module!r})'

    def square_defect(self) -> List[Tuple[Label, Vector]]:
        out = []
        for lab in self.module.labels:
            try:
                dd = self.d.apply(self.d.image(lab))
            except OutsideWindow:
                continue
            if dd:
                out.append((lab, dd))
        return out

    def reliable(self, n: int) -> bool:
        """
        Whether homology in degree n is determined by the materialized data:
        degrees n-1, n, n+1 are complete and d is known on degrees n-1 and n.
        """
        M = self.module
        return (M.complete(n - 1) and M.complete(n) and M.complete(n + 1)
                and self.d.block_known(n - 1) and self.d.block_known(n))

    def computable(self, n: int) -> bool:
        return self.d.block_known(n - 1) and self.d.block_known(n)

    def degrees(self, window: Optional[Tuple[int, int]] = None) -> List[int]:
        if window is None:
            return self.module.support()
        return list(range(window[0], window[1] + 1))

    def residue(self) -> 'FreeComplex':
        return FreeComplex(self.module.residue(), self.d.residue(),
                           check=False)

    def tensor(self, other: 'FreeComplex') -> 'FreeComplex':
        """The tensor product complex with d(x⊗y) = dx⊗y + (-1)^|x| x⊗dy."""
        M = tensor(self.module, other.module)
        d1 = tensor_maps(self.d, GradedMap.identity(other.module))
        d2 = tensor_maps(GradedMap.identity(self.module), other.d)
        return FreeComplex(M, d1 + d2)

    def shift(self, k: int) -> 'FreeComplex':
        """C[k] with differential (-1)^k d."""
        M = self.module.shift(k)
        sign = -1 if k % 2 else 1
        d = GradedMap(M, M, 1, {lab: {key: sign * c for key, c in v.items()}
                                for lab, v in self.d.images.items()})
        return FreeComplex(M, d, check=False)

    def direct_sum(self, other: 'FreeComplex') -> 'FreeComplex':
        M = self.module.direct_sum(other.module)
        images = {}
        for tag, C in ((0, self), (1, other)):
            for lab, v in C.d.images.items():
                images[(tag, lab)] = {(tag, k): c for k, c in v.items()}
        return FreeComplex(M, GradedMap(M, M, 1, images), check=False)


def tensor(M: GradedModule, N: GradedModule) -> GradedModule:
    """(M⊗N)^n = sum over i+j=n of M^i⊗N^j, basis labels (x, y)."""
    if M.ring != N.ring:
        raise ValueError('tensor factors live over different rings')
    degrees = {(x, y): M.degree[x] + N.degree[y]
               for x in M.labels for y in N.labels}
    window = None
    if M.window is not None or N.window is not None:
        lo = min(degrees.values(), default=0)
        hi = max(degrees.values(), default=0)
        window = (lo, hi)
    return GradedModule(M.ring, degrees, window,
                        M.open_below or N.open_below,
                        M.open_above or N.open_above)


def tensor_maps(f: GradedMap, g: GradedMap) -> GradedMap:
    """(f⊗g)(x⊗y) = (-1)^{|g||x|} f(x)⊗g(y)."""
    source = tensor(f.source, g.source)
    target = tensor(f.target, g.target)
    images = {}
    for x in f.source.labels:
        if not f.known(x):
            continue
        fx = f.image(x)
        sx = -1 if (g.degree * f.source.degree[x]) % 2 else 1
        for y in g.source.labels:
            if not g.known(y):
                continue
            out = {}
            for kx, cx in fx.items():
                for ky, cy in g.image(y).items():
                    c = sx * cx * cy
                    if c:
                        out[(kx, ky)] = c
            images[(x, y)] = out
    return GradedMap(source, target, f.degree + g.degree, images)


def hom_internal(M: GradedModule, N: GradedModule) -> GradedModule:
    """Hom(M,N)^n = product over j-i=n of Hom(M^i,N^j); label (x, y) is x↦y."""
    degrees = {(x, y): N.degree[y] - M.degree[x]
               for x in M.labels for y in N.labels}
    return GradedModule(M.ring, degrees)


def reduce_mod_m(X):
    """Entrywise residue of a GradedMap, FreeComplex or matrix."""
    if isinstance(X, (GradedMap, FreeComplex)):
        return X.residue()
    if isinstance(X, np.ndarray):
        ring = X.flat[0].ring if X.size else None
        if ring is None:
            return X.copy()
        return linalg.residue_matrix(X, ring)
    raise TypeError(f'cannot reduce {type(X).__name__} modulo m')


def is_isomorphism(f: GradedMap) -> Tuple[bool, Optional[GradedMap]]:
    """
    Decide whether a degree-0 map of free modules is an isomorphism.

    Per the contramodule Nakayama lemma it suffices that every residue
    block is invertible; the inverse is then lifted block by block.

    Raises:
        RankMismatch: if source and target ranks differ in some degree

    Returns:
        (bool, GradedMap or None): the verdict and the exact inverse
    """
    if f.degree != 0:
        raise ValueError('is_isomorphism expects a degree-0 map')
    degrees = sorted(set(f.source.support()) | set(f.target.support()))
    blocks = {}
    for n in degrees:
        if f.source.rank(n) != f.target.rank(n):
            raise RankMismatch(f'rank {f.source.rank(n)} != '
                               f'{f.target.rank(n)} in degree {n}')
    for n in degrees:
        if f.source.rank(n) == 0:
            continue
        A = f.block(n)
        try:
            blocks[n] = linalg.inverse(A, f.ring)
        except ArithmeticError:
            return False, None
    return True, GradedMap.from_blocks(f.target, f.source, 0, blocks)


def homology_mod_m(C: FreeComplex, window: Optional[Tuple[int, int]] = None
                   ) -> Dict[int, Dict[str, Any]]:
    """
    Dimensions of the homology of C/mC over the residue field.

    Returns:
        (dict): degree -> {'dim': int or None, 'reliable': bool}; dim is None
            where an incident differential is not materialized
    """
    field = C.ring.residue_field()
    R = C.residue() if C.ring.N > 1 else C
    out = {}
    for n in C.degrees(window):
        if not C.computable(n):
            out[n] = {'dim': None, 'reliable': False}
            continue
        r = C.module.rank(n)
        rank_in = linalg.rank(R.d.block(n - 1), field) if C.module.rank(n - 1) and r else 0
        rank_out = linalg.rank(R.d.block(n), field) if C.module.rank(n + 1) and r else 0
        out[n] = {'dim': r - rank_out - rank_in, 'reliable': C.reliable(n)}
    unreliable = [n for n, v in out.items() if not v['reliable']]
    if unreliable and window is not None:
        warnings.warn(f'residue homology is edge-unreliable in degrees '
                      f'{unreliable}', TruncationWarning)
    return out


def _require_closed(C: FreeComplex) -> None:
    bad = [n for n in C.module.support()
           if not (C.module.complete(n) and C.d.block_known(n))]
    edge = []
    if C.module.window is not None:
        lo, hi = C.module.window
        support = C.module.support()
        if support and C.module.open_below and support[0] <= lo:
            edge.append(lo)
        if support and C.module.open_above and support[-1] >= hi:
            edge.append(hi)
    if bad or edge:
        raise WindowTruncation('complex support touches the window boundary',
                               set(bad) | set(edge))


def _residue_homotopy(C: FreeComplex) -> Optional[Dict[int, np.ndarray]]:
    """Blocks h^n: C^n -> C^{n-1} with dh + hd = id over the residue field."""
    field = C.ring.residue_field()
    Cbar = C.residue() if C.ring.N > 1 else C
    degrees = C.module.support()
    if not degrees:
        return {}
    h = {}
    lo, hi = degrees[0], degrees[-1]
    for n in range(lo, hi + 2):
        # solve h^{n+1} d^n = id - d^{n-1} h^n on C^n
        r = C.module.rank(n)
        r_next = C.module.rank(n + 1)
        r_prev = C.module.rank(n - 1)
        pi = linalg.identity(field, r)
        if r_prev and r and n in h:
            pi = pi - linalg.matmul(Cbar.d.block(n - 1), h[n], field)
        if r == 0:
            continue
        if r_next == 0:
            if not linalg.is_zero(pi):
                return None
            continue
        D = Cbar.d.block(n)
        X = linalg.zeros(field, r, r_next)
        Dt = D.T.copy()
        for i in range(r):
            sol = linalg.solve(Dt, list(pi[i, :]), field)
            if sol is None:
                return None
            X[i, :] = sol
        h[n + 1] = X
    return h


def find_homotopy(C: FreeComplex) -> Optional[GradedMap]:
    """
    A contracting homotopy of a complex of free modules, or None.

    The residue complex is contracted over the field, the homotopy is lifted
    to R, and h is corrected by (dh + hd)^{-1}, which commutes with d.

    Raises:
        WindowTruncation: if the support touches an open window boundary
    """
    _require_closed(C)
    ring = C.ring
    hbar = _residue_homotopy(C)
    if hbar is None:
        return None
    M = C.module
    blocks = {n: linalg.lift_matrix(X, ring) for n, X in hbar.items()}
    h = GradedMap.from_blocks(M, M, -1, blocks)
    phi = C.d.compose(h) + h.compose(C.d)
    ok, phi_inv = is_isomorphism(phi)
    if not ok:
        raise RuntimeError('dh + hd is not invertible after lifting')
    h = h.compose(phi_inv)
    if not is_contracting_homotopy(C.d, h):
        raise RuntimeError('corrected homotopy does not contract the complex')
    logger.debug('contracting homotopy found on %d degrees', len(blocks))
    return h


def is_contractible(C: FreeComplex) -> bool:
    return find_homotopy(C) is not None


def is_contracting_homotopy(d: GradedMap, s: GradedMap, scalar=1,
                            labels: Optional[Iterable] = None) -> bool:
    """Check ds + sd = scalar * id on `labels` (default: all computable)."""
    a = d.ring.element(scalar)
    for lab in (d.source.labels if labels is None else labels):
        try:
            val = d.apply(s.image(lab))
            axpy(val, s.apply(d.image(lab)))
        except OutsideWindow:
            if labels is not None:
                raise
            continue
        expected = {lab: a} if a else {}
        if val != expected:
            return False
    return True


def homotopy_by_linear_solve(module: GradedModule, d: GradedMap,
                             scalar=1) -> Optional[GradedMap]:
    """
    Solve ds + sd = scalar * id over R as one linear system.

    Works for any degree-1 endomorphism d (d o d need not vanish). Used as
    the brute-force oracle for find_homotopy.
    """
    ring = module.ring
    a = ring.element(scalar)
    degrees = module.support()
    unknowns = []
    for n in degrees:
        for i in range(module.rank(n - 1)):
            for j in range(module.rank(n)):
                unknowns.append((n, i, j))
    pos = {u: k for k, u in enumerate(unknowns)}
    rows = []
    rhs = []
    for n in degrees:
        r = module.rank(n)
        Dn = d.block(n) if module.rank(n + 1) else None
        Dp = d.block(n - 1) if module.rank(n - 1) else None
        for p in range(r):
            for q in range(r):
                row = [ring.zero] * len(unknowns)
                # (d^{n-1} s^n)[p, q] = sum_c d^{n-1}[p, c] s^n[c, q]
                if Dp is not None:
                    for c in range(module.rank(n - 1)):
                        if Dp[p, c]:
                            k = pos[(n, c, q)]
                            row[k] = row[k] + Dp[p, c]
                # (s^{n+1} d^n)[p, q] = sum_c s^{n+1}[p, c] d^n[c, q]
                if Dn is not None:
                    for c in range(module.rank(n + 1)):
                        if Dn[c, q]:
                            k = pos[(n + 1, p, c)]
                            row[k] = row[k] + Dn[c, q]
                rows.append(row)
                rhs.append(a if p == q else ring.zero)
    if not unknowns:
        ok = all(not x for x in rhs)
        return GradedMap.zero(module, module, -1) if ok else None
    A = linalg.from_rows(ring, rows, len(unknowns)) if rows else linalg.zeros(
        ring, 0, len(unknowns))
    x = linalg.solve(A, rhs, ring)
    if x is None:
        return None
    blocks = {}
    for n in degrees:
        if module.rank(n - 1) == 0:
            continue
        B = linalg.zeros(ring, module.rank(n - 1), module.rank(n))
        for i in range(module.rank(n - 1)):
            for j in range(module.rank(n)):
                B[i, j] = x[pos[(n, i, j)]]
        blocks[n] = B
    return GradedMap.from_blocks(module, module, -1, blocks)


@dataclass
class HomologyGroup:
    """
    Exact homology over R in one degree.

    Attributes:
        degree (int)
        factors (list): exponents k of the cyclic factors R/eps^k, descending
        representatives (list): one cycle (Vector) per factor, same order
        reliable (bool): see FreeComplex.reliable
    """
    degree: int
    factors: List[int]
    representatives: List[Vector]
    reliable: bool
    _coords: Optional[Callable[[Vector], List[RingElem]]] = field(
        default=None, repr=False)

    @property
    def length(self) -> int:
        return sum(self.factors)

    def coordinates(self, cycle: Vector) -> List[RingElem]:
        """Class of a cycle in the basis of `representatives`."""
        if self._coords is None:
            return []
        return self._coords(cycle)

    def to_json(self) -> dict:
        return {'degree': self.degree, 'factors': list(self.factors),
                'reliable': self.reliable}


def _homology_at(C: FreeComplex, n: int) -> HomologyGroup:
    ring = C.ring
    N = ring.N
    M = C.module
    basis = M.basis(n)
    r = len(basis)
    reliable = C.reliable(n)
    if r == 0:
        return HomologyGroup(n, [], [], reliable, lambda cyc: [])
    r_prev, r_next = M.rank(n - 1), M.rank(n + 1)
    A = C.d.block(n - 1) if r_prev else linalg.zeros(ring, r, 0)
    B = C.d.block(n) if r_next else linalg.zeros(ring, 0, r)
    snf = linalg.smith(B, ring)
    col_exp = [snf.exponents[j] if j < len(snf.exponents) else N
               for j in range(r)]
    V, Vinv = snf.V, linalg.inverse(snf.V, ring)
    Ay = linalg.matmul(Vinv, A, ring)
    keep = [j for j in range(r) if col_exp[j] >= 1]
    g = len(keep)
    P = linalg.zeros(ring, g, r_prev + g)
    for a, j in enumerate(keep):
        shift = N - col_exp[j]
        for col in range(r_prev):
            P[a, col] = Ay[j, col].shift_down(shift)
        P[a, r_prev + a] = ring.eps_power(col_exp[j])
    snf2 = linalg.smith(P, ring)
    U2, U2inv = snf2.U, linalg.inverse(snf2.U, ring)
    factors, reps, rows = [], [], []
    for a in range(g):
        k = snf2.exponents[a] if a < len(snf2.exponents) else N
        if k == 0:
            continue
        z = U2inv[:, a]
        y = [ring.zero] * r
        for b, j in enumerate(keep):
            y[j] = z[b].mul_eps_power(N - col_exp[j])
        x = linalg.matmul(V, np.array(y, dtype=object).reshape(r, 1), ring)[:, 0]
        factors.append(k)
        reps.append(M.vector(n, x))
        rows.append((a, k))

    def coords(cycle: Vector) -> List[RingElem]:
        xcol = np.array(M.column(n, cycle), dtype=object).reshape(r, 1)
        ycol = linalg.matmul(Vinv, xcol, ring)[:, 0]
        zcol = [ycol[j].shift_down(N - col_exp[j]) for j in keep]
        w = linalg.matmul(U2, np.array(zcol, dtype=object).reshape(g, 1),
                          ring)[:, 0] if g else []
        return [w[a].truncate(k) for a, k in rows]

    order = sorted(range(len(factors)), key=lambda i: -factors[i])
    factors = [factors[i] for i in order]
    reps = [reps[i] for i in order]
    rows = [rows[i] for i in order]
    return HomologyGroup(n, factors, reps, reliable, coords)


def smith_homology(C: FreeComplex, window: Optional[Tuple[int, int]] = None
                   ) -> Dict[int, HomologyGroup]:
    """
    Exact homology over R per degree via two Smith normal forms.

    The kernel of d^n is read off the column pivots of d^n; the image of
    d^{n-1} is rewritten in those coordinates and the quotient is
    diagonalized again.

    Raises:
        WindowTruncation: if a requested degree needs an unmaterialized
            differential
    """
    out = {}
    missing = [n for n in C.degrees(window) if not C.computable(n)]
    if missing:
        raise WindowTruncation('differential not materialized next to '
                               'requested degrees', missing)
    for n in C.degrees(window):
        out[n] = _homology_at(C, n)
    return out


def fold_mod2(C: FreeComplex,
              window: Optional[Tuple[int, int]] = None) -> Dict[str, Any]:
    """Ranks and residue homology folded onto Z/2 (even/odd)."""
    ranks = {0: 0, 1: 0}
    for n, r in C.module.ranks().items():
        ranks[n % 2] += r
    homology = {0: 0, 1: 0}
    reliable = {0: True, 1: True}
    for n, v in homology_mod_m(C, window).items():
        if v['dim'] is None:
            reliable[n % 2] = False
            continue
        homology[n % 2] += v['dim']
        reliable[n % 2] = reliable[n % 2] and v['reliable']
    return {'ranks': {'even': ranks[0], 'odd': ranks[1]},
            'residue_homology': {'even': homology[0], 'odd': homology[1]},
            'reliable': {'even': reliable[0], 'odd': reliable[1]}}
