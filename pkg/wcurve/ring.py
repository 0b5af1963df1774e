"""
Module for exact arithmetic in the truncated local rings k[eps]/eps^N
(k = F_p, or Q when p = 0) and Z/p^N.

Elements are immutable; every operation returns a new element in canonical
form, so equality is plain coefficient comparison.
"""

__all__ = [
    "LocalRingSpec",
    "RingElem",
    "idempotent_lift",
    "telescope_solve",
]

import itertools
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterator, List, Optional, Sequence, Union

import numpy as np

from wcurve.errors import (NotAUnit, NotApproxIdempotent, RingMismatch,
                           SNotTopologicallyNilpotent)

logger = logging.getLogger(__name__)

RING_KINDS = ('eps', 'padic')


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % q for q in range(2, int(math.isqrt(n)) + 1))


@dataclass(frozen=True)
class LocalRingSpec:
    """
    A truncated local ring.

    Attributes:
        kind (str): 'eps' for k[eps]/eps^N, 'padic' for Z/p^N
        p (int): residue characteristic; 0 means k = Q (eps kind only)
        N (int): precision, eps^N = 0 (resp. modulus p^N)
    """
    kind: str
    p: int
    N: int

    def __post_init__(self):
        if self.kind not in RING_KINDS:
            raise ValueError(f'ring kind must be one of {RING_KINDS}, '
                             f'got {self.kind!r}')
        if not isinstance(self.N, int) or self.N < 1:
            raise ValueError(f'precision N must be a positive integer, '
                             f'got {self.N!r}')
        if self.kind == 'padic' and not _is_prime(self.p):
            raise ValueError(f'p-adic kind needs a prime p, got {self.p!r}')
        if self.kind == 'eps' and self.p != 0 and not _is_prime(self.p):
            raise ValueError(f'residue characteristic must be 0 or prime, '
                             f'got {self.p!r}')

    # -- construction -----------------------------------------------------

    @property
    def modulus(self) -> int:
        return self.p ** self.N

    @property
    def label(self) -> str:
        if self.kind == 'padic':
            return f'Z/{self.p}^{self.N}'
        field_name = 'Q' if self.p == 0 else f'F{self.p}'
        return f'{field_name}[e]/e^{self.N}'

    @property
    def is_finite(self) -> bool:
        return self.p != 0

    @property
    def size(self) -> int:
        if not self.is_finite:
            raise ValueError(f'{self.label} is infinite')
        return self.p ** self.N

    def _coefficient(self, c: Any) -> Any:
        if self.p == 0:
            return Fraction(c)
        if isinstance(c, Fraction):
            if c.denominator % self.p == 0:
                raise ValueError(f'{c} has no image in F{self.p}')
            return (c.numerator * pow(c.denominator, -1, self.p)) % self.p
        return int(c) % self.p

    def element(self, value: Any) -> 'RingElem':
        """
        Build an element from an int, a Fraction, a coefficient sequence
        (eps kind, low to high) or base-p digits (p-adic kind).
        """
        if isinstance(value, RingElem):
            if value.ring != self:
                raise RingMismatch(f'{value!r} lives over {value.ring.label}, '
                                   f'not {self.label}')
            return value
        if self.kind == 'eps':
            if isinstance(value, (list, tuple)):
                if len(value) > self.N:
                    value = list(value[:self.N])
                coeffs = [self._coefficient(c) for c in value]
                coeffs += [self._coefficient(0)] * (self.N - len(coeffs))
                return RingElem(self, tuple(coeffs))
            return RingElem(self, (self._coefficient(value),)
                            + (self._coefficient(0),) * (self.N - 1))
        if isinstance(value, (list, tuple)):
            total = sum(int(d) * self.p ** i for i, d in enumerate(value))
            return RingElem(self, total % self.modulus)
        if isinstance(value, Fraction):
            if value.denominator % self.p == 0:
                raise ValueError(f'{value} has no image in {self.label}')
            inv = pow(value.denominator, -1, self.modulus)
            return RingElem(self, (value.numerator * inv) % self.modulus)
        return RingElem(self, int(value) % self.modulus)

    coerce = element

    @property
    def zero(self) -> 'RingElem':
        return self.element(0)

    @property
    def one(self) -> 'RingElem':
        return self.element(1)

    @property
    def uniformizer(self) -> 'RingElem':
        """The generator of m: eps, respectively p."""
        if self.kind == 'eps':
            return self.element([0, 1])
        return self.element(self.p)

    eps = uniformizer

    def eps_power(self, k: int) -> 'RingElem':
        if k >= self.N:
            return self.zero
        if self.kind == 'eps':
            return self.element([0] * k + [1])
        return self.element(self.p ** k)

    def residue_field(self) -> 'LocalRingSpec':
        return LocalRingSpec(self.kind, self.p, 1)

    def with_precision(self, N: int) -> 'LocalRingSpec':
        return LocalRingSpec(self.kind, self.p, N)

    def lift(self, r: 'RingElem') -> 'RingElem':
        """Lift a residue-field element by its constant coefficient."""
        if self.kind == 'eps':
            return self.element([r.value[0]])
        return self.element(r.value)

    def elements(self) -> Iterator['RingElem']:
        """All elements of a finite ring, in a fixed order."""
        if not self.is_finite:
            raise ValueError(f'{self.label} is infinite; cannot enumerate')
        if self.kind == 'eps':
            for coeffs in itertools.product(range(self.p), repeat=self.N):
                yield RingElem(self, tuple(coeffs))
        else:
            for v in range(self.modulus):
                yield RingElem(self, v)

    def random_element(self, rng: np.random.Generator,
                       min_valuation: int = 0) -> 'RingElem':
        """Sample an element of m^min_valuation."""
        if min_valuation >= self.N:
            return self.zero
        if self.kind == 'eps':
            lo, hi = (-3, 4) if self.p == 0 else (0, self.p)
            coeffs = [0] * min_valuation + [
                int(rng.integers(lo, hi)) for _ in range(self.N - min_valuation)]
            return self.element(coeffs)
        top = self.p ** (self.N - min_valuation)
        return self.element(int(rng.integers(0, top)) * self.p ** min_valuation)

    def random_unit(self, rng: np.random.Generator) -> 'RingElem':
        while True:
            a = self.random_element(rng)
            if a.is_unit():
                return a

    def to_json(self) -> dict:
        return {'ring': {'kind': self.kind, 'p': self.p, 'N': self.N}}

    @classmethod
    def from_json(cls, data: dict) -> 'LocalRingSpec':
        spec = data['ring'] if 'ring' in data else data
        return cls(spec['kind'], int(spec['p']), int(spec['N']))


class RingElem:
    """
    An element of a truncated local ring in canonical form.

    For the eps kind `value` is the tuple (c_0, ..., c_{N-1}); for the
    p-adic kind it is an integer in [0, p^N).
    """
    __slots__ = ('ring', 'value')

    def __init__(self, ring: LocalRingSpec, value: Any):
        self.ring = ring
        self.value = value

    def _other(self, other: Any) -> 'RingElem':
        if isinstance(other, RingElem):
            if other.ring != self.ring:
                raise RingMismatch(f'cannot combine elements of '
                                   f'{self.ring.label} and {other.ring.label}')
            return other
        if isinstance(other, (int, Fraction, np.integer)):
            return self.ring.element(int(other) if isinstance(other, np.integer)
                                     else other)
        return NotImplemented

    def __add__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        if self.ring.kind == 'eps':
            if self.ring.p == 0:
                return RingElem(self.ring, tuple(
                    a + b for a, b in zip(self.value, other.value)))
            p = self.ring.p
            return RingElem(self.ring, tuple(
                (a + b) % p for a, b in zip(self.value, other.value)))
        return RingElem(self.ring, (self.value + other.value) % self.ring.modulus)

    __radd__ = __add__

    def __neg__(self):
        if self.ring.kind == 'eps':
            if self.ring.p == 0:
                return RingElem(self.ring, tuple(-a for a in self.value))
            p = self.ring.p
            return RingElem(self.ring, tuple((-a) % p for a in self.value))
        return RingElem(self.ring, (-self.value) % self.ring.modulus)

    def __sub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        if self.ring.kind == 'padic':
            return RingElem(self.ring,
                            (self.value * other.value) % self.ring.modulus)
        N = self.ring.N
        a, b = self.value, other.value
        out = [0] * N
        for i, ai in enumerate(a):
            if not ai:
                continue
            for j in range(N - i):
                if b[j]:
                    out[i + j] += ai * b[j]
        if self.ring.p == 0:
            return RingElem(self.ring, tuple(Fraction(c) for c in out))
        p = self.ring.p
        return RingElem(self.ring, tuple(c % p for c in out))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.invert() ** (-k)
        result = self.ring.one
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, RingElem):
            return self.ring == other.ring and self.value == other.value
        if isinstance(other, (int, Fraction, np.integer)):
            return self.value == self.ring.element(int(other) if isinstance(
                other, np.integer) else other).value
        return NotImplemented

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __hash__(self):
        # constants hash like the int or Fraction they compare equal to
        if self.ring.kind == 'padic':
            return hash(self.value)
        if not any(self.value[1:]):
            return hash(self.value[0])
        return hash((self.ring, self.value))

    def __bool__(self):
        if self.ring.kind == 'eps':
            return any(self.value)
        return self.value != 0

    def is_zero(self) -> bool:
        return not self

    # -- valuation and units ----------------------------------------------

    def valuation(self) -> Union[int, float]:
        """Largest j with a in m^j; math.inf for 0."""
        if not self:
            return math.inf
        if self.ring.kind == 'eps':
            return next(i for i, c in enumerate(self.value) if c)
        v, x = 0, self.value
        while x % self.ring.p == 0:
            x //= self.ring.p
            v += 1
        return v

    def is_unit(self) -> bool:
        return self.valuation() == 0

    def invert(self) -> 'RingElem':
        """
        Exact inverse of a unit.

        Raises:
            NotAUnit: if the residue of the element is zero
        """
        if not self.is_unit():
            raise NotAUnit(f'{self!r} has valuation {self.valuation()} '
                           f'in {self.ring.label}')
        if self.ring.kind == 'padic':
            return RingElem(self.ring, pow(self.value, -1, self.ring.modulus))
        c0 = self.value[0]
        if self.ring.p == 0:
            c0_inv = self.ring.element(Fraction(1) / c0)
        else:
            c0_inv = self.ring.element(pow(int(c0), -1, self.ring.p))
        # a = c0 (1 - n) with n nilpotent, so a^{-1} = c0^{-1} sum n^k
        n = self.ring.one - self * c0_inv
        total, term = self.ring.one, self.ring.one
        for _ in range(1, self.ring.N):
            term = term * n
            total = total + term
        return total * c0_inv

    def residue(self) -> 'RingElem':
        k = self.ring.residue_field()
        if self.ring.kind == 'eps':
            return RingElem(k, (self.value[0],))
        return RingElem(k, self.value % self.ring.p)

    def shift_down(self, j: int) -> 'RingElem':
        """The representative b with eps^j b = a and zero top coefficients."""
        if j == 0:
            return self
        if self.valuation() < j:
            raise ValueError(f'{self!r} is not divisible by e^{j}')
        if self.ring.kind == 'eps':
            zero = self.ring._coefficient(0)
            return RingElem(self.ring, self.value[j:] + (zero,) * j)
        return RingElem(self.ring, self.value // self.ring.p ** j)

    def unit_part(self) -> 'RingElem':
        """The unit u with a = eps^v(a) u (1 for a = 0)."""
        if not self:
            return self.ring.one
        return self.shift_down(self.valuation())

    def exact_div(self, b: 'RingElem') -> 'RingElem':
        """
        Some q with q * b = self.

        Raises:
            ValueError: if b does not divide self
        """
        b = self._other(b)
        if not self:
            return self.ring.zero
        if not b or b.valuation() > self.valuation():
            raise ValueError(f'{b!r} does not divide {self!r}')
        return self.shift_down(b.valuation()) * b.unit_part().invert()

    def mul_eps_power(self, k: int) -> 'RingElem':
        return self * self.ring.eps_power(k)

    def truncate(self, k: int) -> 'RingElem':
        """Reduce modulo eps^k (the representative with zero top part)."""
        if k >= self.ring.N:
            return self
        if self.ring.kind == 'eps':
            zero = self.ring._coefficient(0)
            return RingElem(self.ring,
                            self.value[:k] + (zero,) * (self.ring.N - k))
        return RingElem(self.ring, self.value % self.ring.p ** k)

    # -- serialization ------------------------------------------------------

    def to_json(self) -> List[Any]:
        if self.ring.kind == 'eps':
            return [int(c) if not isinstance(c, Fraction) or c.denominator == 1
                    else f'{c.numerator}/{c.denominator}' for c in self.value]
        digits, x = [], self.value
        for _ in range(self.ring.N):
            digits.append(x % self.ring.p)
            x //= self.ring.p
        return digits

    def __repr__(self):
        if self.ring.kind == 'padic':
            return str(self.value)
        terms = []
        for i, c in enumerate(self.value):
            if not c:
                continue
            coeff = str(c)
            if i == 0:
                terms.append(coeff)
            else:
                mon = 'e' if i == 1 else f'e^{i}'
                terms.append(mon if c == 1 else f'{coeff}{mon}')
        return '+'.join(terms) if terms else '0'


def idempotent_lift(a: np.ndarray, max_steps: Optional[int] = None) -> np.ndarray:
    """
    Lift a matrix that is idempotent modulo m to an exact idempotent.

    Iterates e <- 3e^2 - 2e^3 to a fixpoint; the result is a polynomial in
    `a` with integer coefficients, so it commutes with `a`.

    Args:
        a (np.ndarray): square object matrix of RingElem
        max_steps (int, optional): iteration bound; defaults to
            ceil(log2 N) + 2

    Raises:
        NotApproxIdempotent: if a^2 - a has an entry of valuation 0

    Returns:
        (np.ndarray): e with e.dot(e) == e and e == a modulo m
    """
    a = np.asarray(a, dtype=object)
    if a.size == 0:
        return a.copy()
    ring = a.flat[0].ring
    defect = a.dot(a) - a
    if any(x.valuation() == 0 for x in defect.flat):
        raise NotApproxIdempotent('a^2 - a has a unit entry; a is not '
                                  'idempotent modulo m')
    if max_steps is None:
        max_steps = math.ceil(math.log2(ring.N)) + 2 if ring.N > 1 else 1
    e = a
    for step in range(max_steps + 1):
        e2 = e.dot(e)
        nxt = 3 * e2 - 2 * e2.dot(e)
        if all(x == y for x, y in zip(nxt.flat, e.flat)):
            logger.debug('idempotent lift converged after %d step(s)', step)
            return e
        e = nxt
    if not all(x == y for x, y in zip(e.dot(e).flat, e.flat)):
        raise RuntimeError('idempotent lifting did not converge')
    return e


def telescope_solve(s: RingElem, p: Sequence[Any],
                    tail: Optional[Any] = None) -> List[Any]:
    """
    Solve q_i = p_i + s q_{i+1} for i = 0 .. len(p) - 1.

    The unique solution is q_i = sum_j s^j p_{i+j}, a finite sum because
    s^N = 0. Entries past the end of `p` are `tail` (a constant
    continuation) or zero.

    Args:
        s (RingElem): element of m
        p (Sequence): RingElems or equal-length vectors of RingElems
        tail (optional): value of p_k for k >= len(p)

    Raises:
        SNotTopologicallyNilpotent: if v(s) = 0

    Returns:
        (list): q_0 .. q_{len(p)-1}, same shape as the entries of p
    """
    if s.valuation() == 0:
        raise SNotTopologicallyNilpotent(f's = {s!r} is a unit; the telescope '
                                         f'sum does not terminate')
    ring = s.ring
    if not p:
        return []
    scalar = isinstance(p[0], RingElem)
    as_arr = (lambda x: x) if scalar else (
        lambda x: np.array(list(x), dtype=object))
    seq = [as_arr(x) for x in p]
    zero = ring.zero if scalar else np.array([ring.zero] * len(seq[0]),
                                             dtype=object)
    cont = zero if tail is None else as_arr(tail)
    powers = [ring.one]
    while powers[-1]:
        powers.append(powers[-1] * s)
    powers.pop()

    def entry(k):
        return seq[k] if k < len(seq) else cont

    def q_at(i):
        total = zero
        for j, sj in enumerate(powers):
            total = total + sj * entry(i + j)
        return total

    q = [q_at(i) for i in range(len(seq) + 1)]
    for i in range(len(seq)):
        defect = q[i] - seq[i] - s * q[i + 1]
        bad = defect if scalar else any(bool(x) for x in defect)
        if bad:
            raise RuntimeError(f'telescope recurrence fails at index {i}')
    out = q[:len(seq)]
    return out if scalar else [tuple(x) for x in out]
