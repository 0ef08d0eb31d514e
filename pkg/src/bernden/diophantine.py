"""Explicit linear-forms-in-logarithms and two-base digit-sum bounds.

At every representable n the two-base bound is below 2, so these evaluators
are for reporting; the one decidable statement at desk scale is the
exceptional-prime scan.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from bernden.analytic import iterated_log
from bernden.digits import digit_sum, digit_sums_over_bases
from bernden.errors import DomainError, RangeError, UsageError
from bernden.primes import PrimeSieve


@dataclass(frozen=True)
class MatveevInput:
    k: int
    heights: tuple[float, ...]
    D: float

    def __post_init__(self):
        if self.k < 1 or len(self.heights) != self.k:
            raise UsageError(f"need k >= 1 heights, got k={self.k}, {len(self.heights)} heights")
        if any(h <= 0 for h in self.heights):
            raise UsageError("heights must be positive")
        if self.D < 1:
            raise UsageError(f"D must be >= 1, got {self.D}")


def _log_abs(m: int) -> float:
    return math.log(abs(m))


def height(r: int, s: int = 1) -> float:
    """h(r/s) = max(log|r|, log s) after reduction."""
    if r == 0:
        raise DomainError("height of 0 is undefined")
    if s <= 0:
        raise UsageError(f"denominator must be positive, got {s}")
    g = math.gcd(r, s)
    r, s = r // g, s // g
    return max(_log_abs(r), math.log(s))


def matveev_bound(inp: MatveevInput) -> float:
    """-1.4 * 30^(k+3) * k^4.5 * (1 + log D) * prod A_i."""
    return -1.4 * 30.0 ** (inp.k + 3) * inp.k**4.5 * (1.0 + math.log(inp.D)) * math.prod(inp.heights)


def log_abs_linear_form(alphas: list[Fraction], exponents: list[int]) -> float:
    """log|prod alpha_i^d_i - 1|, with the product formed in exact rationals."""
    lam = math.prod((Fraction(a) ** d for a, d in zip(alphas, exponents)), start=Fraction(1)) - 1
    if lam == 0:
        raise DomainError("linear form vanishes")
    return _log_abs(lam.numerator) - math.log(lam.denominator)


def stewart_constant(B: float) -> float:
    """C(a, b) = log(2e12 (log B)^2); B >= e so that log B >= 1."""
    if not B >= math.e:
        raise DomainError(f"B must be >= e, got {B}")
    return math.log(2e12 * math.log(B) ** 2)


def stewart_rhs(n: int, C: float) -> float:
    """log_2 n / (log_3 n + C)."""
    if n < 3:
        raise UsageError(f"n must be >= 3, got {n}")
    return iterated_log(2, n) / (iterated_log(3, n) + C)


def stewart_valid(n: int, B: float) -> bool:
    """Whether n > exp(1e15 (log B)^4), the range where C(a, b) is proven."""
    return math.log(n) > 1e15 * math.log(B) ** 4


@dataclass(frozen=True)
class StewartSample:
    n: int
    p: int
    q: int
    digit_sum_total: int
    rhs: float
    valid: bool


def stewart_report(ns: list[int], primes: list[int]) -> list[StewartSample]:
    """Measured s_p(n) + s_q(n) next to the explicit bound, for distinct prime pairs."""
    out = []
    for n in ns:
        for i, p in enumerate(primes):
            for q in primes[i + 1 :]:
                B = max(p, q, 3)
                out.append(
                    StewartSample(
                        n=n,
                        p=p,
                        q=q,
                        digit_sum_total=digit_sum(n, p) + digit_sum(n, q),
                        rhs=stewart_rhs(n, stewart_constant(B)),
                        valid=stewart_valid(n, B),
                    )
                )
    return out


def exceptional_primes(sieve: PrimeSieve, n: int, y: float) -> list[int]:
    """Primes p <= y not dividing P_n (s_p(n) < p)."""
    if n < 1:
        raise UsageError(f"n must be positive, got {n}")
    if y > sieve.limit:
        raise RangeError(f"y = {y} exceeds sieve limit {sieve.limit}")
    ps = sieve.primes[: int(np.searchsorted(sieve.primes, y, side="right"))]
    if ps.size == 0:
        return []
    s = digit_sums_over_bases(n, ps)
    return [int(p) for p in ps[s < ps]]
