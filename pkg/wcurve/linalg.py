"""
Module for exact matrices over truncated local rings.

Matrices are numpy object arrays of RingElem. Smith normal form pivots on
minimal valuation, which is enough over k[eps]/eps^N and Z/p^N because
every element is eps^v times a unit.
"""

__all__ = [
    "zeros",
    "identity",
    "from_rows",
    "matmul",
    "equal",
    "is_zero",
    "residue_matrix",
    "lift_matrix",
    "min_valuation",
    "SmithForm",
    "smith",
    "solve",
    "inverse",
    "rref",
    "rank",
    "kernel",
]

import logging
import math
from dataclasses import dataclass
from typing import Any, List, Optional, Sequence, Tuple

import numpy as np

from wcurve.errors import NotAUnit
from wcurve.ring import LocalRingSpec, RingElem

logger = logging.getLogger(__name__)


def zeros(ring: LocalRingSpec, rows: int, cols: int) -> np.ndarray:
    out = np.empty((rows, cols), dtype=object)
    out.fill(ring.zero)
    return out


def identity(ring: LocalRingSpec, n: int) -> np.ndarray:
    out = zeros(ring, n, n)
    for i in range(n):
        out[i, i] = ring.one
    return out


def from_rows(ring: LocalRingSpec, rows: Sequence[Sequence[Any]],
              cols: Optional[int] = None) -> np.ndarray:
    """Coerce nested lists of ints/coefficient arrays into a matrix."""
    n_cols = cols if cols is not None else (len(rows[0]) if rows else 0)
    out = zeros(ring, len(rows), n_cols)
    for i, row in enumerate(rows):
        if len(row) != n_cols:
            raise ValueError(f'row {i} has {len(row)} entries, expected '
                             f'{n_cols}')
        for j, x in enumerate(row):
            out[i, j] = ring.element(x)
    return out


def matmul(A: np.ndarray, B: np.ndarray, ring: LocalRingSpec) -> np.ndarray:
    m, k = A.shape
    k2, n = B.shape
    if k != k2:
        raise ValueError(f'cannot multiply {A.shape} by {B.shape}')
    out = zeros(ring, m, n)
    for i in range(m):
        row = A[i]
        nz = [l for l in range(k) if row[l]]
        for j in range(n):
            s = ring.zero
            for l in nz:
                b = B[l, j]
                if b:
                    s = s + row[l] * b
            out[i, j] = s
    return out


def equal(A: np.ndarray, B: np.ndarray) -> bool:
    return A.shape == B.shape and all(x == y for x, y in zip(A.flat, B.flat))


def is_zero(A: np.ndarray) -> bool:
    return not any(bool(x) for x in A.flat)


def residue_matrix(A: np.ndarray, ring: LocalRingSpec) -> np.ndarray:
    out = zeros(ring.residue_field(), *A.shape)
    for idx, x in np.ndenumerate(A):
        out[idx] = x.residue()
    return out


def lift_matrix(A: np.ndarray, ring: LocalRingSpec) -> np.ndarray:
    out = zeros(ring, *A.shape)
    for idx, x in np.ndenumerate(A):
        out[idx] = ring.lift(x)
    return out


def min_valuation(A: np.ndarray):
    return min((x.valuation() for x in A.flat), default=math.inf)


@dataclass
class SmithForm:
    """
    U @ A @ V = D with U, V invertible and D diagonal.

    Attributes:
        exponents (list): for each diagonal position t < min(m, n) the k with
            D[t, t] = eps^k; k = N marks a zero pivot
        rank (int): number of exponents below N
    """
    U: np.ndarray
    D: np.ndarray
    V: np.ndarray
    exponents: List[int]
    rank: int


def smith(A: np.ndarray, ring: LocalRingSpec) -> SmithForm:
    """
    Smith normal form over k[eps]/eps^N or Z/p^N.

    Args:
        A (np.ndarray): m x n object matrix of RingElem
        ring (LocalRingSpec): coefficient ring (needed for empty shapes)

    Returns:
        (SmithForm): with pivots eps^k sorted ascending in k
    """
    A = A.copy()
    m, n = A.shape
    U = identity(ring, m)
    V = identity(ring, n)
    exps: List[int] = []
    for t in range(min(m, n)):
        best, best_v = None, math.inf
        for i in range(t, m):
            for j in range(t, n):
                v = A[i, j].valuation()
                if v < best_v:
                    best, best_v = (i, j), v
                    if v == 0:
                        break
            if best_v == 0:
                break
        if best is None:
            break
        i, j = best
        if i != t:
            A[[t, i], :] = A[[i, t], :]
            U[[t, i], :] = U[[i, t], :]
        if j != t:
            A[:, [t, j]] = A[:, [j, t]]
            V[:, [t, j]] = V[:, [j, t]]
        u_inv = A[t, t].unit_part().invert()
        A[t, :] = A[t, :] * u_inv
        U[t, :] = U[t, :] * u_inv
        pivot = A[t, t]
        for i in range(t + 1, m):
            if A[i, t]:
                f = A[i, t].exact_div(pivot)
                A[i, :] = A[i, :] - f * A[t, :]
                U[i, :] = U[i, :] - f * U[t, :]
        for j in range(t + 1, n):
            if A[t, j]:
                f = A[t, j].exact_div(pivot)
                A[:, j] = A[:, j] - f * A[:, t]
                V[:, j] = V[:, j] - f * V[:, t]
        exps.append(best_v)
    rank = len(exps)
    exps += [ring.N] * (min(m, n) - rank)
    return SmithForm(U, A, V, exps, rank)


def solve(A: np.ndarray, b: Sequence[RingElem],
          ring: LocalRingSpec) -> Optional[np.ndarray]:
    """
    A solution x of A x = b, or None when the system is inconsistent.
    """
    m, n = A.shape
    b = np.asarray(list(b), dtype=object).reshape(m, 1) if m else zeros(ring, 0, 1)
    snf = smith(A, ring)
    c = matmul(snf.U, b, ring)[:, 0]
    y = [ring.zero] * n
    for t in range(m):
        k = snf.exponents[t] if t < len(snf.exponents) else ring.N
        if k >= ring.N:
            if c[t]:
                return None
            continue
        if c[t].valuation() < k:
            return None
        y[t] = c[t].shift_down(k)
    x = matmul(snf.V, np.array(y, dtype=object).reshape(n, 1), ring)[:, 0]
    return x


def rref(A: np.ndarray, field: LocalRingSpec) -> Tuple[np.ndarray, List[int]]:
    """Reduced row echelon form over a residue field; returns (R, pivots)."""
    R = A.copy()
    m, n = R.shape
    pivots: List[int] = []
    row = 0
    for col in range(n):
        if row >= m:
            break
        piv = next((i for i in range(row, m) if R[i, col]), None)
        if piv is None:
            continue
        if piv != row:
            R[[row, piv], :] = R[[piv, row], :]
        R[row, :] = R[row, :] * R[row, col].invert()
        for i in range(m):
            if i != row and R[i, col]:
                R[i, :] = R[i, :] - R[i, col] * R[row, :]
        pivots.append(col)
        row += 1
    return R, pivots


def rank(A: np.ndarray, field: LocalRingSpec) -> int:
    return len(rref(A, field)[1])


def kernel(A: np.ndarray, field: LocalRingSpec) -> np.ndarray:
    """Columns spanning the right kernel of A over a field."""
    m, n = A.shape
    R, pivots = rref(A, field)
    free = [j for j in range(n) if j not in pivots]
    K = zeros(field, n, len(free))
    for c, f in enumerate(free):
        K[f, c] = field.one
        for r, p in enumerate(pivots):
            K[p, c] = -R[r, f]
    return K


def inverse(A: np.ndarray, ring: LocalRingSpec) -> np.ndarray:
    """
    Exact inverse of a square matrix whose residue is invertible.

    The residue inverse comes from Gauss-Jordan over k and is lifted by
    Newton iteration X <- X (2I - A X).

    Raises:
        NotAUnit: if the residue matrix is singular
    """
    n, n2 = A.shape
    if n != n2:
        raise ValueError(f'cannot invert a {A.shape} matrix')
    k = ring.residue_field()
    Abar = residue_matrix(A, ring)
    aug = np.concatenate([Abar, identity(k, n)], axis=1) if n else Abar
    R, pivots = rref(aug, k)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise NotAUnit('matrix is singular modulo m')
    X = lift_matrix(R[:, n:], ring)
    I = identity(ring, n)
    for _ in range(ring.N + 1):
        AX = matmul(A, X, ring)
        if equal(AX, I):
            return X
        X = matmul(X, 2 * I - AX, ring)
    if not equal(matmul(A, X, ring), I):
        raise RuntimeError('Newton lifting of the inverse did not converge')
    return X
