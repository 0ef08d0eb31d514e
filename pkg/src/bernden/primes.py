"""Prime sieve, interval iteration and small-integer factor helpers."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import isqrt

import numpy as np

from bernden.errors import RangeError, ResourceError, UsageError

# One byte per integer; 10**9 is ~1 GB of table.
DEFAULT_MAX_LIMIT = 10**9
DEFAULT_MIN_LIMIT = 2 * 10**6


@dataclass(frozen=True, eq=False)
class PrimeSieve:
    """Immutable primality table for every integer in ``[0, limit]``.

    ``table[m]`` is True iff ``m`` is prime and ``primes`` holds the primes in
    ascending order as ``int64``. Safe to share read-only between workers.
    """

    limit: int
    table: np.ndarray = field(repr=False)
    primes: np.ndarray = field(repr=False)

    def is_prime(self, m: int) -> bool:
        """Primality of ``m``; beyond ``limit`` falls back to trial division
        by the tabulated primes, which is exact up to ``limit**2``."""
        if m < 0:
            return False
        if m <= self.limit:
            return bool(self.table[m])
        if m > self.limit * self.limit:
            raise RangeError(f"{m} exceeds limit**2 = {self.limit ** 2}; rebuild the sieve with limit >= {isqrt(m) + 1}")
        r = isqrt(m)
        for p in self.primes:
            p = int(p)
            if p > r:
                break
            if m % p == 0:
                return False
        return True

    def is_prime_many(self, values: np.ndarray) -> np.ndarray:
        """Vectorised ``is_prime`` over an integer array."""
        values = np.asarray(values, dtype=np.int64)
        out = np.zeros(values.shape, dtype=bool)
        if values.size == 0:
            return out
        inside = (values >= 0) & (values <= self.limit)
        out[inside] = self.table[values[inside]]
        beyond = values > self.limit
        if not beyond.any():
            return out
        big = values[beyond]
        top = int(big.max())
        if top > self.limit * self.limit:
            raise RangeError(f"{top} exceeds limit**2 = {self.limit ** 2}; rebuild the sieve with limit >= {isqrt(top) + 1}")
        # Progressive trial division: drop candidates as soon as a factor shows up.
        idx = np.flatnonzero(beyond)
        alive = np.ones(big.shape, dtype=bool)
        bound = isqrt(top)
        for p in self.primes[: int(np.searchsorted(self.primes, bound, side="right"))]:
            cand = big[alive]
            if cand.size == 0:
                break
            hit = cand % p == 0
            if hit.any():
                pos = np.flatnonzero(alive)[hit]
                alive[pos] = False
        out[idx] = alive
        return out

    def primes_in(self, lo: int, hi: int) -> np.ndarray:
        """Primes ``p`` with ``lo < p <= hi``, ascending."""
        if hi <= lo:
            raise RangeError(f"empty interval ({lo}, {hi}]")
        if hi > self.limit:
            raise RangeError(f"hi = {hi} exceeds sieve limit {self.limit}")
        a = np.searchsorted(self.primes, lo, side="right")
        b = np.searchsorted(self.primes, hi, side="right")
        return self.primes[a:b]

    def count_upto(self, x: int) -> int:
        if x > self.limit:
            raise RangeError(f"x = {x} exceeds sieve limit {self.limit}")
        return int(np.searchsorted(self.primes, x, side="right"))

    def segment_is_prime(self, lo: int, hi: int) -> np.ndarray:
        """Boolean primality for every integer in ``[lo, hi]``.

        Uses the table where it reaches and a segmented sieve by the stored
        primes beyond it (requires ``hi <= limit**2``).
        """
        if hi < lo:
            return np.zeros(0, dtype=bool)
        if hi <= self.limit:
            return self.table[lo : hi + 1].copy()
        if hi > self.limit * self.limit:
            raise RangeError(f"segment end {hi} exceeds limit**2 = {self.limit ** 2}")
        seg = np.ones(hi - lo + 1, dtype=bool)
        r = isqrt(hi)
        for p in self.primes[: int(np.searchsorted(self.primes, r, side="right"))]:
            p = int(p)
            start = max(p * p, ((lo + p - 1) // p) * p)
            seg[start - lo :: p] = False
        for m in range(lo, min(hi, 1) + 1):
            seg[m - lo] = False
        return seg


def build_sieve(limit: int, max_limit: int = DEFAULT_MAX_LIMIT) -> PrimeSieve:
    """Sieve of Eratosthenes up to ``limit`` inclusive."""
    if limit < 2:
        raise UsageError(f"sieve limit must be >= 2, got {limit}")
    if limit > max_limit:
        raise ResourceError(
            f"sieve limit {limit} exceeds the memory budget of {max_limit} entries "
            f"(about {limit / 1e9:.1f} GB of table); raise max_limit explicitly if intended"
        )
    table = np.ones(limit + 1, dtype=bool)
    table[:2] = False
    table[4::2] = False
    for i in range(3, isqrt(limit) + 1, 2):
        if table[i]:
            table[i * i :: 2 * i] = False
    primes = np.flatnonzero(table).astype(np.int64)
    table.flags.writeable = False
    primes.flags.writeable = False
    return PrimeSieve(limit=limit, table=table, primes=primes)


def default_limit(x_max: int) -> int:
    """Sieve limit large enough for Pn-statistics of every n <= x_max + 1."""
    return max(DEFAULT_MIN_LIMIT, (x_max + 1) // 2 + 2)


def primes_in(sieve: PrimeSieve, lo: int, hi: int) -> list[int]:
    return [int(p) for p in sieve.primes_in(lo, hi)]


def largest_prime_factor(m: int) -> int:
    """P(m), the largest prime dividing ``m`` (trial division)."""
    if m < 2:
        raise UsageError(f"largest_prime_factor needs m >= 2, got {m}")
    largest = 1
    while m % 2 == 0:
        largest = 2
        m //= 2
    d = 3
    while d * d <= m:
        while m % d == 0:
            largest = d
            m //= d
        d += 2
    return m if m > 1 else largest


def is_prime_small(m: int) -> bool:
    """Deterministic trial-division primality, for sieve-free callers."""
    if m < 2:
        return False
    if m % 2 == 0:
        return m == 2
    d = 3
    while d * d <= m:
        if m % d == 0:
            return False
        d += 2
    return True


def divisors(n: int) -> list[int]:
    """All positive divisors of ``n >= 1``, ascending."""
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]
