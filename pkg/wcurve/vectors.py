"""
Sparse vectors over a local ring: dicts from basis keys to nonzero RingElems.

The helpers mirror the add/negate/axpy trio of dictionary-backed linear
algebra; zero coefficients are never stored.
"""

__all__ = [
    "Vector",
    "axpy",
    "add",
    "scale",
    "negate",
    "subtract",
    "is_zero",
    "vector_sum",
    "enumerate_vectors",
    "check_budget",
]

import itertools
from typing import Any, Dict, Hashable, Iterable, List, Optional, Sequence

from wcurve.errors import EnumerationBudgetExceeded
from wcurve.ring import RingElem

Vector = Dict[Hashable, RingElem]


def axpy(target: Vector, vec: Vector, a: Optional[Any] = None) -> Vector:
    """In place: target += a * vec. Returns target."""
    for key, c in vec.items():
        term = c if a is None else a * c
        prev = target.get(key)
        new = term if prev is None else prev + term
        if new:
            target[key] = new
        else:
            target.pop(key, None)
    return target


def add(u: Vector, v: Vector) -> Vector:
    return axpy(dict(u), v)


def scale(vec: Vector, a: Any) -> Vector:
    out = {}
    for key, c in vec.items():
        term = a * c
        if term:
            out[key] = term
    return out


def negate(vec: Vector) -> Vector:
    return {key: -c for key, c in vec.items()}


def subtract(u: Vector, v: Vector) -> Vector:
    return axpy(dict(u), v, -1)


def is_zero(vec: Vector) -> bool:
    return not any(vec.values())


def vector_sum(vecs: Iterable[Vector]) -> Vector:
    out: Vector = {}
    for v in vecs:
        axpy(out, v)
    return out


def enumerate_vectors(ring, basis: Sequence[Hashable],
                      min_valuation: int = 0) -> List[Vector]:
    """All vectors on `basis` with coefficients in m^min_valuation."""
    values = [e for e in ring.elements()
              if not e or e.valuation() >= min_valuation]
    return [{b: c for b, c in zip(basis, coeffs) if c}
            for coeffs in itertools.product(values, repeat=len(basis))]


def check_budget(sizes: Iterable[int], budget: int, what: str) -> None:
    """
    Raises:
        EnumerationBudgetExceeded: if the product of `sizes` exceeds budget
    """
    total = 1
    for s in sizes:
        total *= s
        if total > budget:
            raise EnumerationBudgetExceeded(f'{what}: more than {budget} '
                                            f'candidates')
