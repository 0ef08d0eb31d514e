"""Special functions and numerical checks of the analytic estimates.

Everything with an unspecified implied constant is reported as a ratio; only
explicit inequalities (the E_1 bracket, the sieve-sum bound with constant
2/eps, tail bounds) are decided here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from math import isqrt

import numpy as np
from scipy import integrate

from bernden.digits import digit_sums_over_bases
from bernden.errors import DomainError, RangeError, UsageError
from bernden.primes import PrimeSieve

EULER_GAMMA = 0.57721566490153286060651209
E1_SWITCH = 1.5

# Erdos-Ford-Tenenbaum constant, 1 - (1 + ln ln 2)/ln 2.
EFT_DELTA = 1.0 - (1.0 + math.log(math.log(2.0))) / math.log(2.0)


@dataclass(frozen=True)
class AnalyticEstimate:
    value: float
    error_low: float
    error_high: float
    method: str  # series | continued-fraction | truncated-sum | census

    def __post_init__(self):
        if not self.error_low <= self.value <= self.error_high:
            raise ValueError(f"bracket [{self.error_low}, {self.error_high}] misses value {self.value}")

    def contains(self, x: float) -> bool:
        return self.error_low <= x <= self.error_high


def exp_integral_e1(x: float) -> float:
    """E_1(x) = int_x^inf e^-t / t dt for x > 0."""
    if not x > 0:
        raise DomainError(f"E_1 needs x > 0, got {x}")
    if x <= E1_SWITCH:
        # -gamma - ln x + sum_{k>=1} (-1)^(k+1) x^k / (k k!)
        total = 0.0
        term = 1.0
        k = 1
        while True:
            term *= x / k
            contrib = term / k
            total += contrib if k % 2 else -contrib
            if contrib < 1e-17 * abs(total):
                break
            k += 1
        return -EULER_GAMMA - math.log(x) + total
    # Modified Lentz on E_1(x) = e^-x / (x + 1 - 1/(x + 3 - 4/(x + 5 - ...)))
    tiny = 1e-300
    b = x + 1.0
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for i in range(1, 10000):
        an = -float(i * i)
        b += 2.0
        d = 1.0 / (an * d + b)
        c = b + an / c
        delta = c * d
        h *= delta
        if abs(delta - 1.0) < 1e-16:
            break
    return h * math.exp(-x)


def e1_bracket(x: float) -> tuple[float, float]:
    """(e^-x/(x+1), e^-x/x), which strictly encloses E_1(x)."""
    if not x > 0:
        raise DomainError(f"x must be positive, got {x}")
    ex = math.exp(-x)
    return ex / (x + 1.0), ex / x


def e1_asymptotic_partial(x: float, N: int) -> AnalyticEstimate:
    """First N terms of e^-x/x * sum (-1)^m m!/x^m, bracketed by twice the
    remainder bound N! e^-x / x^(N+1)."""
    if not x > 0:
        raise DomainError(f"x must be positive, got {x}")
    if N < 1:
        raise UsageError(f"N must be >= 1, got {N}")
    s = 0.0
    term = 1.0
    for m in range(N):
        if m:
            term *= -m / x
        s += term
    value = math.exp(-x) / x * s
    width = 2.0 * math.factorial(N) * math.exp(-x) / x ** (N + 1)
    return AnalyticEstimate(value, value - width, value + width, "series")


def expansion_term(n: int, j: int) -> float:
    """j-th term (-1)^(j-1) 2^j (j-1)! sqrt(n) / (log n)^j of the omega(P_n^+) expansion."""
    L = math.log(n)
    return (-1) ** (j - 1) * 2.0**j * math.factorial(j - 1) * math.sqrt(n) / L**j


def omega_plus_expansion(n: int, N: int) -> float:
    if n < 3:
        raise DomainError(f"expansion needs n >= 3, got {n}")
    if N < 1:
        raise UsageError(f"N must be >= 1, got {N}")
    return sum(expansion_term(n, j) for j in range(1, N + 1))


def iterated_log(k: int, x: float) -> float:
    """log_1 x = max(1, ln x); log_k x = max(1, ln(log_{k-1} x))."""
    if k < 1:
        raise UsageError(f"k must be >= 1, got {k}")
    v = max(1.0, math.log(x)) if x > 0 else 1.0
    for _ in range(k - 1):
        v = max(1.0, math.log(v))
    return v


def delta_c(x: float, c: float) -> float:
    """exp(-c (log x)^(3/5) (log_2 x)^(-1/5)) for x > e, c > 0."""
    if not x > math.e or not c > 0:
        raise DomainError(f"delta_c needs x > e and c > 0, got x={x}, c={c}")
    return math.exp(-c * math.log(x) ** 0.6 * iterated_log(2, x) ** -0.2)


def psi(x: float) -> float:
    """Sawtooth x - floor(x) - 1/2."""
    return x - math.floor(x) - 0.5


def f_kappa(t: float, kappa: int) -> float:
    """F_0(t) = E_1(log t), F_1(t) = 1/t."""
    if not t > 1:
        raise DomainError(f"F_kappa needs t > 1, got {t}")
    if kappa == 0:
        return exp_integral_e1(math.log(t))
    if kappa == 1:
        return 1.0 / t
    raise UsageError(f"kappa must be 0 or 1, got {kappa}")


def li(u: float) -> float:
    """Offset logarithmic integral int_2^u dt / log t."""
    if not u >= 2:
        raise DomainError(f"li needs u >= 2, got {u}")
    if u == 2:
        return 0.0
    # substitute t = e^s: int_{ln 2}^{ln u} e^s / s ds
    val, _ = integrate.quad(lambda s: math.exp(s) / s, math.log(2.0), math.log(u), epsabs=0.0, epsrel=1e-13, limit=200)
    return val


def prime_recip_tail(sieve: PrimeSieve, t: float, kappa: int) -> AnalyticEstimate:
    """sum_{p > t} (log p)^kappa / (p(p-1)), truncated at the sieve limit L.

    The bracket adds the tail over all integers m > L: exactly 1/L when
    kappa = 0, and at most 2 log L / L when kappa = 1 (log L >= 1).
    """
    if kappa not in (0, 1):
        raise UsageError(f"kappa must be 0 or 1, got {kappa}")
    if t < 2:
        raise UsageError(f"t must be >= 2, got {t}")
    L = sieve.limit
    if L < 10 * t:
        raise RangeError(f"sieve limit {L} must be at least 10 t = {10 * t}")
    ps = sieve.primes[int(np.searchsorted(sieve.primes, t, side="right")) :].astype(np.float64)
    terms = 1.0 / (ps * (ps - 1.0))
    if kappa:
        terms *= np.log(ps)
    # sum smallest terms first
    value = math.fsum(terms[::-1])
    tail = 1.0 / L if kappa == 0 else 2.0 * math.log(L) / L
    return AnalyticEstimate(value, value, value + tail, "truncated-sum")


@dataclass(frozen=True)
class SieveSumResult:
    lhs: float
    rhs: float
    holds: bool


def lemma_sieve_sum(sieve: PrimeSieve, x: float, y: float, z: float, kappa: int, epsilon: float) -> SieveSumResult:
    """sum_{z<p<=x} (floor((x+y)/p) - floor(x/p)) (log p)^kappa against 2/eps (y+1) (log x)^kappa."""
    if kappa not in (0, 1):
        raise UsageError(f"kappa must be 0 or 1, got {kappa}")
    if not 0 < epsilon < 1:
        raise UsageError(f"epsilon must lie in (0, 1), got {epsilon}")
    if not (x >= 2 and 1 < x**epsilon <= y <= z < x):
        raise UsageError(f"need 1 < x^eps <= y <= z < x, got x={x}, y={y}, z={z}, eps={epsilon}")
    if sieve.limit < x:
        raise RangeError(f"sieve limit {sieve.limit} < x = {x}")
    lo = int(np.searchsorted(sieve.primes, z, side="right"))
    hi = int(np.searchsorted(sieve.primes, x, side="right"))
    ps = sieve.primes[lo:hi].astype(np.float64)
    counts = np.floor((x + y) / ps) - np.floor(x / ps)
    if kappa:
        counts = counts * np.log(ps)
    lhs = math.fsum(counts)
    rhs = 2.0 / epsilon * (y + 1.0) * math.log(x) ** kappa
    return SieveSumResult(lhs, rhs, lhs < rhs)


@dataclass(frozen=True)
class CorSumResult:
    lhs: int
    bound_ref: float

    @property
    def ratio(self) -> float:
        return self.lhs / self.bound_ref


def cor_sieve_sum(sieve: PrimeSieve, n: int, alpha: float) -> CorSumResult:
    """kappa = 0 sum over sqrt(n)/alpha < p <= n of floor((n-1)/(p-1)) - floor(n/p).

    n/p + (n-p)/(p(p-1)) equals (n-1)/(p-1), so each summand is an exact
    integer difference.
    """
    if not n ** (-7 / 16) < alpha < 1:
        raise UsageError(f"alpha must lie in (n^(-7/16), 1) = ({n ** (-7 / 16)}, 1), got {alpha}")
    if sieve.limit < n:
        raise RangeError(f"sieve limit {sieve.limit} < n = {n}")
    lo = int(np.searchsorted(sieve.primes, math.sqrt(n) / alpha, side="right"))
    hi = int(np.searchsorted(sieve.primes, n, side="right"))
    ps = sieve.primes[lo:hi]
    lhs = int(((n - 1) // (ps - 1) - n // ps).sum())
    return CorSumResult(lhs, alpha * math.sqrt(n))


def s12_empirical(sieve: PrimeSieve, n: int, c: float = 1.0) -> float:
    """S_12 for kappa = 0: sum of psi((n-1)/(p-1)) - psi(n/p) over
    sqrt(n) < p <= sqrt(n)/delta_c(sqrt(n))."""
    root = math.sqrt(n)
    if root <= math.e:
        return 0.0
    top = root / delta_c(root, c)
    if sieve.limit < top:
        raise RangeError(f"sieve limit {sieve.limit} < {top:.1f} needed for S_12 at n = {n}")
    lo = int(np.searchsorted(sieve.primes, isqrt(n), side="right"))
    hi = int(np.searchsorted(sieve.primes, top, side="right"))
    ps = sieve.primes[lo:hi]
    ps = ps[ps * ps > n]
    if ps.size == 0:
        return 0.0
    # psi differences reduce to differences of fractional parts
    frac_a = ((n - 1) % (ps - 1)) / (ps - 1).astype(np.float64)
    frac_b = (n % ps) / ps.astype(np.float64)
    return math.fsum(frac_a - frac_b)


@dataclass(frozen=True)
class FractionalCensus:
    count: int
    divisor_count: int
    reference: float
    threshold: float
    all_counted_divide: bool

    @property
    def ratio(self) -> float:
        return self.count / self.reference

    @property
    def divisor_ratio(self) -> float:
        return self.divisor_count / self.reference


def fractional_census(sieve: PrimeSieve, n: int, v: int) -> FractionalCensus:
    """Primes 2v < p < 3v with {n/p} >= 1 - n/(16 v^2), and those dividing P_n^+."""
    if v < 2 or not (v ** (37 / 20) <= n <= v * v):
        raise UsageError(f"need v^(37/20) <= n <= v^2, got n={n}, v={v}")
    if sieve.limit < 3 * v:
        raise RangeError(f"sieve limit {sieve.limit} < 3v = {3 * v}")
    ps = sieve.primes_in(2 * v, 3 * v - 1)
    r = n % ps
    # {n/p} >= 1 - n/(16 v^2)  <=>  16 v^2 r >= p (16 v^2 - n), in integers
    V = 16 * v * v
    counted = V * r >= ps * (V - n)
    s = digit_sums_over_bases(n, ps)
    divides = (s >= ps) & (ps * ps > n)
    return FractionalCensus(
        count=int(counted.sum()),
        divisor_count=int(divides.sum()),
        reference=n / (v * math.log(n)),
        threshold=1.0 - n / V,
        all_counted_divide=bool(np.all(divides[counted])),
    )
