import math
from fractions import Fraction

import pytest
import sympy

from bernden.bernoulli import (
    bernoulli_numbers,
    bernoulli_poly,
    btilde_poly,
    poly_denominator,
    power_sum,
    power_sum_identity_holds,
)
from bernden.errors import ResourceError, UsageError
from bernden.pncore import pn_value, qn
from bernden.primes import build_sieve


def akiyama_tanigawa(N):
    """B_0..B_N by the Akiyama-Tanigawa algorithm (gives B_1 = +1/2)."""
    out, a = [], []
    for m in range(N + 1):
        a.append(Fraction(1, m + 1))
        for j in range(m, 0, -1):
            a[j - 1] = j * (a[j - 1] - a[j])
        out.append(a[0])
    return out


def test_numbers_against_independent_oracles():
    B = bernoulli_numbers(120)
    at = akiyama_tanigawa(120)
    assert B[1] == Fraction(-1, 2)
    for n in range(121):
        if n != 1:
            assert B[n] == at[n], n
            assert B[n] == Fraction(str(sympy.bernoulli(n))), n
    assert B[12] == Fraction(-691, 2730)


def test_poly_examples():
    assert str(bernoulli_poly(2)) == "X^2 - X + 1/6"
    assert str(bernoulli_poly(3)) == "X^3 - (3/2)X^2 + (1/2)X"
    assert bernoulli_poly(1)(Fraction(1, 2)) == 0
    assert str(btilde_poly(2)) == "X^2 - X"


def test_poly_against_sympy():
    x = sympy.Symbol("x")
    for n in (2, 5, 10, 31):
        ref = sympy.Poly(sympy.bernoulli(n, x), x).all_coeffs()[::-1]
        assert bernoulli_poly(n).coefficients == tuple(Fraction(str(c)) for c in ref)


def test_reflection_and_shift():
    for n in range(1, 40):
        P = bernoulli_poly(n)
        for x in (Fraction(0), Fraction(1, 3), Fraction(5, 2)):
            assert P(x + 1) - P(x) == n * x ** (n - 1)
            assert P(1 - x) == (-1) ** n * P(x)


def test_denominator_identity_small():
    s = build_sieve(1000)
    for n in range(1, 101):
        assert poly_denominator(btilde_poly(n)) == pn_value(s, n)
        assert poly_denominator(bernoulli_poly(n)) == math.lcm(pn_value(s, n), qn(n))


def test_von_staudt_clausen_small():
    B = bernoulli_numbers(100)
    for n in range(2, 101, 2):
        assert B[n].denominator == qn(n)


def test_power_sums():
    for n in range(2, 51):
        for N in (1, 2, 7, 30):
            assert power_sum_identity_holds(N, n)
    assert not power_sum_identity_holds(5, 1)
    assert power_sum(4, 3) == 1 + 4 + 9


def test_errors():
    with pytest.raises(UsageError):
        btilde_poly(0)
    with pytest.raises(UsageError):
        bernoulli_numbers(-1)
    with pytest.raises(ResourceError):
        bernoulli_numbers(1001)
