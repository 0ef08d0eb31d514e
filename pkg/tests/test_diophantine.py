import math
import random
from fractions import Fraction

import pytest

from bernden import diophantine as dio
from bernden.digits import digit_sum
from bernden.errors import DomainError, RangeError, UsageError
from bernden.pncore import pn_prime_set
from bernden.primes import build_sieve


def test_height():
    assert dio.height(2, 3) == pytest.approx(math.log(3))
    assert dio.height(-7, 1) == pytest.approx(math.log(7))
    assert dio.height(10, 4) == pytest.approx(math.log(5))
    assert dio.height(1) == 0 and dio.height(-1) == 0
    with pytest.raises(DomainError):
        dio.height(0, 5)


def test_matveev_values():
    assert dio.matveev_bound(dio.MatveevInput(1, (1.0,), 1.0)) == pytest.approx(-1_134_000)
    assert dio.matveev_bound(dio.MatveevInput(3, (1.0, 1.0, 1.0), math.e)) == pytest.approx(-2.864e11, rel=1e-3)
    with pytest.raises(UsageError):
        dio.MatveevInput(2, (1.0,), 1.0)
    with pytest.raises(UsageError):
        dio.MatveevInput(1, (0.0,), 1.0)


def test_matveev_monotone():
    base = dio.matveev_bound(dio.MatveevInput(2, (1.0, 2.0), 3.0))
    assert base < 0
    assert dio.matveev_bound(dio.MatveevInput(2, (1.5, 2.0), 3.0)) < base
    assert dio.matveev_bound(dio.MatveevInput(2, (1.0, 2.5), 3.0)) < base
    assert dio.matveev_bound(dio.MatveevInput(2, (1.0, 2.0), 4.0)) < base


def test_matveev_on_samples():
    rng = random.Random(5)
    for _ in range(200):
        a, b = rng.randint(-20, 20), rng.randint(-20, 20)
        r, s = rng.randint(1, 50), rng.randint(1, 50)
        alphas = [Fraction(2), Fraction(3), Fraction(r, s)]
        try:
            lhs = dio.log_abs_linear_form(alphas, [a, b, 1])
        except DomainError:
            continue
        heights = [math.log(2), math.log(3), max(dio.height(r, s), 1e-9)]
        # Matveev uses A_i >= max(D h(alpha_i), |log alpha_i|, 0.16)
        A = [max(h, abs(math.log(float(al))), 0.16) for h, al in zip(heights, alphas)]
        D = max(abs(a), abs(b), 1)
        assert lhs > dio.matveev_bound(dio.MatveevInput(3, tuple(A), D))


def test_linear_form_exact():
    assert dio.log_abs_linear_form([Fraction(2), Fraction(3)], [3, -2]) == pytest.approx(math.log(Fraction(1, 9)))
    with pytest.raises(DomainError):
        dio.log_abs_linear_form([Fraction(4), Fraction(2)], [1, -2])


def test_stewart():
    assert dio.stewart_constant(16) == pytest.approx(30.36, abs=0.01)
    assert dio.stewart_constant(math.e) == pytest.approx(math.log(2e12))
    cs = [dio.stewart_constant(b) for b in (3, 5, 16, 100, 1e6)]
    assert all(b > a for a, b in zip(cs, cs[1:]))
    with pytest.raises(DomainError):
        dio.stewart_constant(2)
    # log_2 n = e makes log_3 n exactly clamp to 1
    n = int(math.exp(math.exp(math.e)))
    C = 30.36
    assert dio.stewart_rhs(n, C) == pytest.approx(math.log(math.log(n)) / (1 + C))
    for k in range(1, 301):
        assert dio.stewart_rhs(10**k if k > 1 else 10, 30.0) < 2
    assert not dio.stewart_valid(10**300, 3)
    with pytest.raises(UsageError):
        dio.stewart_rhs(2, C)


def test_stewart_report():
    rep = dio.stewart_report([123456789], [2, 3, 5])
    assert [(r.p, r.q) for r in rep] == [(2, 3), (2, 5), (3, 5)]
    assert rep[0].digit_sum_total == digit_sum(123456789, 2) + digit_sum(123456789, 3)
    assert not any(r.valid for r in rep)


def test_exceptional_primes():
    s = build_sieve(10_000)
    assert dio.exceptional_primes(s, 2**20, 3) == [2]
    assert dio.exceptional_primes(s, 5, 4) == []
    assert dio.exceptional_primes(s, 1, 10) == [2, 3, 5, 7]
    for k in range(1, 21):
        assert 2 in dio.exceptional_primes(s, 2**k, 2)
    with pytest.raises(RangeError):
        dio.exceptional_primes(s, 10, 20_000)


def test_exceptional_complement():
    s = build_sieve(10_000)
    small = [p for p in s.primes.tolist() if p <= 50]
    for n in range(1, 10_001, 13):
        pn = set(pn_prime_set(s, n))
        assert dio.exceptional_primes(s, n, 50) == [p for p in small if p not in pn]
