"""Exact Bernoulli numbers and polynomials over the rationals.

Convention: B_1 = -1/2, so B_1(X) = X - 1/2. Rationals are
:class:`fractions.Fraction`, which is always kept in lowest terms with a
positive denominator.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction

from bernden.errors import ResourceError, UsageError

DEFAULT_CAP = 1000

_lock = threading.Lock()
_memo: list[Fraction] = [Fraction(1)]


@dataclass(frozen=True)
class RationalPolynomial:
    """Polynomial with ``coefficients[k]`` the coefficient of X**k."""

    coefficients: tuple[Fraction, ...]

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, x) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def __str__(self) -> str:
        out = ""
        for k in range(self.degree, -1, -1):
            c = self.coefficients[k]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            mono = "" if k == 0 else ("X" if k == 1 else f"X^{k}")
            if mono and mag == 1:
                body = mono
            elif mono:
                body = f"({mag}){mono}" if mag.denominator != 1 else f"{mag}{mono}"
            else:
                body = str(mag)
            out += (f"-{body}" if sign == "-" else body) if not out else f" {sign} {body}"
        return out or "0"


def bernoulli_numbers(N: int, cap: int = DEFAULT_CAP) -> list[Fraction]:
    """[B_0, ..., B_N] from sum_{k=0}^{m} C(m+1, k) B_k = 0."""
    if N < 0:
        raise UsageError(f"N must be non-negative, got {N}")
    if N > cap:
        raise ResourceError(f"N = {N} exceeds the Bernoulli cap {cap}")
    with _lock:
        for m in range(len(_memo), N + 1):
            if m > 1 and m % 2:
                _memo.append(Fraction(0))
                continue
            acc = Fraction(0)
            binom = 1  # C(m+1, k)
            for k in range(m):
                if _memo[k]:
                    acc += binom * _memo[k]
                binom = binom * (m + 1 - k) // (k + 1)
            _memo.append(-acc / (m + 1))
        return _memo[: N + 1]


def bernoulli_poly(n: int, cap: int = DEFAULT_CAP) -> RationalPolynomial:
    """B_n(X) = sum_k C(n, k) B_k X^(n-k)."""
    B = bernoulli_numbers(n, cap)
    coeffs = [Fraction(0)] * (n + 1)
    for k in range(n + 1):
        coeffs[n - k] = math.comb(n, k) * B[k]
    return RationalPolynomial(tuple(coeffs))


def btilde_poly(n: int, cap: int = DEFAULT_CAP) -> RationalPolynomial:
    """B_n(X) - B_n."""
    if n < 1:
        raise UsageError(f"btilde_poly needs n >= 1, got {n}")
    coeffs = list(bernoulli_poly(n, cap).coefficients)
    coeffs[0] = Fraction(0)
    return RationalPolynomial(tuple(coeffs))


def poly_denominator(poly: RationalPolynomial) -> int:
    """Least D > 0 with D * poly in Z[X]."""
    return math.lcm(*(c.denominator for c in poly.coefficients))


def power_sum(N: int, n: int) -> int:
    """sum_{j=1}^{N-1} j^(n-1), summed directly."""
    if N < 1 or n < 1:
        raise UsageError(f"power_sum needs N, n >= 1, got N={N}, n={n}")
    return sum(j ** (n - 1) for j in range(1, N))


def power_sum_identity_holds(N: int, n: int) -> bool:
    """Check Btilde_n(N) == n * sum_{j=1}^{N-1} j^(n-1) exactly.

    For n = 1 the left side is N while the sum is N - 1 (the j = 0 term
    0**0 = 1 is missing), so the check is only meaningful for n >= 2.
    """
    return btilde_poly(n)(N) == n * power_sum(N, n)
