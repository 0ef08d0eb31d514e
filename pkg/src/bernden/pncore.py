"""The Kellner-Sondow product P_n = prod{p : s_p(n) >= p} and its pieces.

Two independent routes compute the large-prime part ``P_n^+``:

* the direct scan, which evaluates s_p(n) for every prime p <= (n+1)/2;
* the interval enumeration used by the ``*_fast`` functions. For p > sqrt(n)
  write n = a*p + r with a = floor(n/p) < p; then s_p(n) = a + r >= p iff
  n/(a+1) < p <= (n+a)/(a+1). That interval has length a/(a+1) < 1, so each
  a = 1..isqrt(n) contributes at most the single candidate
  m_a = floor((n+a)/(a+1)), which is kept iff m_a*(a+1) >= n+1, m_a**2 > n and
  m_a is prime. This costs O(sqrt(n)) per n instead of O(n/log n).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

import numpy as np

from bernden.digits import digit_sum, digit_sums_over_bases
from bernden.errors import RangeError, UsageError
from bernden.primes import PrimeSieve, divisors, is_prime_small


class Comparison(enum.IntEnum):
    """Sign of P_n - P_{n+1}."""

    LESS = -1
    EQUAL = 0
    GREATER = 1


@dataclass(frozen=True)
class PnRecord:
    n: int
    minus_primes: tuple[int, ...]
    plus_primes: tuple[int, ...]
    omega_plus: int
    log_pn_plus: float
    largest_prime: int | None

    @property
    def omega_minus(self) -> int:
        return len(self.minus_primes)

    @property
    def primes(self) -> tuple[int, ...]:
        return self.minus_primes + self.plus_primes

    def value(self) -> int:
        return math.prod(self.primes)


@dataclass(frozen=True)
class TransitionRecord:
    n: int
    divides: bool
    comparison: Comparison
    gained_primes: tuple[int, ...]
    lost_primes: tuple[int, ...]
    case1_witnesses: tuple[int, ...]
    in_A: bool

    def ratio(self) -> Fraction:
        """P_n / P_{n+1} in lowest terms."""
        return Fraction(math.prod(self.lost_primes), math.prod(self.gained_primes))


def _require(sieve: PrimeSieve, needed: int) -> None:
    if sieve.limit < needed:
        raise RangeError(f"sieve limit {sieve.limit} too small: need limit >= {needed}")


def _check_n(n: int, least: int = 1) -> None:
    if n < least:
        raise UsageError(f"n must be >= {least}, got {n}")


def pn_prime_set(sieve: PrimeSieve, n: int) -> list[int]:
    """Primes dividing P_n, by direct digit sums over all p <= (n+1)/2."""
    _check_n(n)
    top = (n + 1) // 2
    _require(sieve, top)
    ps = sieve.primes[: int(np.searchsorted(sieve.primes, top, side="right"))]
    if ps.size == 0:
        return []
    s = digit_sums_over_bases(n, ps)
    return [int(p) for p in ps[s >= ps]]


def pn_record(sieve: PrimeSieve, n: int) -> PnRecord:
    ps = pn_prime_set(sieve, n)
    minus = tuple(p for p in ps if p * p < n)
    plus = tuple(p for p in ps if p * p > n)
    return PnRecord(
        n=n,
        minus_primes=minus,
        plus_primes=plus,
        omega_plus=len(plus),
        log_pn_plus=math.fsum(math.log(p) for p in plus),
        largest_prime=ps[-1] if ps else None,
    )


def plus_candidates(sieve: PrimeSieve, n: int) -> np.ndarray:
    """Primes of P_n^+ by interval enumeration, in increasing a (so decreasing size).

    Needs ``sieve.limit**2 >= (n+1)/2``; candidates above the table are
    settled by trial division.
    """
    r = isqrt(n)
    if r == 0:
        return np.zeros(0, dtype=np.int64)
    a = np.arange(1, r + 1, dtype=np.int64)
    m = (n + a) // (a + 1)
    keep = (m * (a + 1) >= n + 1) & (m * m > n)
    m = m[keep]
    return m[sieve.is_prime_many(m)]


def minus_primes_direct(sieve: PrimeSieve, n: int) -> np.ndarray:
    """Primes p with p*p < n and s_p(n) >= p."""
    r = isqrt(n - 1) if n > 1 else 0
    _require(sieve, r)
    ps = sieve.primes[: int(np.searchsorted(sieve.primes, r, side="right"))]
    if ps.size == 0:
        return ps
    s = digit_sums_over_bases(n, ps)
    return ps[s >= ps]


def pn_prime_set_fast(sieve: PrimeSieve, n: int) -> list[int]:
    """Same set as :func:`pn_prime_set` in O(sqrt(n)) work.

    Works whenever ``sieve.limit >= sqrt(n)``, which lets callers reach n far
    beyond ``2 * sieve.limit``.
    """
    _check_n(n)
    minus = minus_primes_direct(sieve, n)
    plus = plus_candidates(sieve, n)
    return [int(p) for p in minus] + sorted(int(p) for p in plus)


def omega_plus_fast(sieve: PrimeSieve, n: int) -> int:
    """omega(P_n^+) via the interval enumeration."""
    _check_n(n, 2)
    _require(sieve, (n + 1) // 2)
    return int(plus_candidates(sieve, n).size)


def log_pn_plus_fast(sieve: PrimeSieve, n: int) -> float:
    """log P_n^+ (natural log) via the interval enumeration."""
    _check_n(n, 2)
    _require(sieve, (n + 1) // 2)
    plus = plus_candidates(sieve, n)
    if plus.size == 0:
        return 0.0
    # sequential summation in enumeration order, matching the census path
    return float(np.cumsum(np.log(plus.astype(np.float64)))[-1])


def largest_pn_prime(sieve: PrimeSieve, n: int) -> int | None:
    """P(P_n), or None when P_n = 1."""
    _check_n(n)
    _require(sieve, (n + 1) // 2)
    for a in range(1, isqrt(n) + 1):
        m = (n + a) // (a + 1)
        if m * m <= n:
            break
        if m * (a + 1) >= n + 1 and sieve.is_prime(m):
            return m
    minus = minus_primes_direct(sieve, n)
    return int(minus[-1]) if minus.size else None


def qn(n: int) -> int:
    """von Staudt-Clausen product of primes p with (p-1) | n; 1 for odd n > 1, 2 for n = 1."""
    _check_n(n)
    if n > 1 and n % 2:
        return 1
    return math.prod(d + 1 for d in divisors(n) if is_prime_small(d + 1))


def pn_value(sieve: PrimeSieve, n: int) -> int:
    """P_n as an exact integer."""
    return math.prod(pn_prime_set(sieve, n))


def case1_witnesses(sieve: PrimeSieve, n: int) -> list[int]:
    """Primes p with s_p(n) = p - 1; such p satisfy (p-1) | n."""
    _check_n(n)
    out = []
    for d in divisors(n):
        p = d + 1
        if sieve.is_prime(p) and digit_sum(n, p) == d:
            out.append(p)
    return out


def compare_products(lost: list[int], gained: list[int]) -> Comparison:
    a, b = math.prod(lost), math.prod(gained)
    return Comparison((a > b) - (a < b))


def classify_transition(sieve: PrimeSieve, n: int) -> TransitionRecord:
    """Compare P_n with P_{n+1} and record which primes move."""
    _check_n(n)
    _require(sieve, (n + 2) // 2)
    cur = set(pn_prime_set(sieve, n))
    nxt = set(pn_prime_set(sieve, n + 1))
    gained = sorted(nxt - cur)
    lost = sorted(cur - nxt)
    wit = case1_witnesses(sieve, n)
    return TransitionRecord(
        n=n,
        divides=not gained,
        comparison=compare_products(lost, gained),
        gained_primes=tuple(gained),
        lost_primes=tuple(lost),
        case1_witnesses=tuple(wit),
        in_A=bool(wit),
    )
