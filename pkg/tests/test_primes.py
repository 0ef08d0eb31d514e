import numpy as np
import pytest
from hypothesis import given, strategies as st

from bernden.errors import RangeError, ResourceError, UsageError
from bernden.primes import build_sieve, divisors, largest_prime_factor, primes_in


def _trial(m):
    if m < 2:
        return False
    d = 2
    while d * d <= m:
        if m % d == 0:
            return False
        d += 1
    return True


def test_table_matches_trial_division():
    s = build_sieve(100_000)
    oracle = np.array([_trial(m) for m in range(100_001)])
    assert np.array_equal(s.table, oracle)


def test_prime_counts():
    s = build_sieve(1_000_000)
    assert s.count_upto(10**6) == 78498
    assert s.count_upto(100) == 25
    assert s.primes[0] == 2 and s.primes[-1] == 999983


def test_is_prime_beyond_table(sieve_small):
    assert sieve_small.is_prime(1_000_000_007)
    assert not sieve_small.is_prime(1_000_000_007 * 3)
    with pytest.raises(RangeError):
        sieve_small.is_prime(200_001**2)


def test_is_prime_many_matches_scalar(sieve_small):
    vals = np.array([2, 4, 199_999, 1_000_003, 999_999_937, 999_999_938, 10**9 + 9])
    assert sieve_small.is_prime_many(vals).tolist() == [sieve_small.is_prime(int(v)) for v in vals]


def test_segment_is_prime(sieve_small):
    lo, hi = 10**9, 10**9 + 2000
    seg = sieve_small.segment_is_prime(lo, hi)
    assert seg.tolist() == [_trial(m) for m in range(lo, hi + 1)]


@given(st.integers(1, 99_999), st.integers(1, 99_999), st.integers(1, 99_999))
def test_primes_in_concatenates(a, b, c):
    s = _SIEVE
    lo, mid, hi = sorted((a, b, c))
    if not lo < mid < hi:
        return
    joined = primes_in(s, lo, mid) + primes_in(s, mid, hi)
    assert joined == primes_in(s, lo, hi)


_SIEVE = build_sieve(100_000)


def test_primes_in_half_open(sieve_small):
    assert primes_in(sieve_small, 2, 13) == [3, 5, 7, 11, 13]
    with pytest.raises(RangeError):
        primes_in(sieve_small, 5, 5)
    with pytest.raises(RangeError):
        primes_in(sieve_small, 1, 200_001)


def test_build_errors():
    with pytest.raises(UsageError):
        build_sieve(1)
    with pytest.raises(ResourceError):
        build_sieve(10**6, max_limit=10**5)


def test_largest_prime_factor():
    assert largest_prime_factor(2) == 2
    assert largest_prime_factor(1326) == 17
    assert largest_prime_factor(2**20) == 2
    assert largest_prime_factor(999_999_937) == 999_999_937
    with pytest.raises(UsageError):
        largest_prime_factor(1)


def test_divisors():
    assert divisors(12) == [1, 2, 3, 4, 6, 12]
    assert divisors(1) == [1]
