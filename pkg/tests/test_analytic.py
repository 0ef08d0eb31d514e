import math
import random

import mpmath
import numpy as np
import pytest
from scipy import special

from bernden import analytic as an
from bernden.errors import DomainError, RangeError, UsageError
from bernden.primes import build_sieve


@pytest.fixture(scope="module")
def sieve_1e5():
    return build_sieve(100_000)


def test_e1_against_scipy_and_mpmath():
    for x in np.geomspace(1e-3, 700, 400):
        x = float(x)
        ref = special.exp1(x)
        assert abs(an.exp_integral_e1(x) - ref) <= 1e-12 + 1e-13 * ref
    for x in (1e-3, 0.5, 1.5, 1.5000001, 6.907755278982137, 50.0):
        assert an.exp_integral_e1(x) == pytest.approx(float(mpmath.e1(x)), rel=1e-13, abs=1e-14)
    assert an.exp_integral_e1(1.0) == pytest.approx(0.21938393439552, abs=1e-13)


def test_e1_bracket_grid():
    for x in (0.5, 1, 2, 5, 10, 50):
        lo, hi = an.e1_bracket(x)
        assert lo < an.exp_integral_e1(x) < hi
    lo, hi = an.e1_bracket(2)
    assert lo == pytest.approx(0.0451117610788709) and hi == pytest.approx(0.06766764161830635)
    with pytest.raises(DomainError):
        an.exp_integral_e1(0)


def test_e1_asymptotic_bracket_grid():
    for x in (5, 6, 8, 10, 20, 50, 100):
        for N in range(1, 6):
            assert an.e1_asymptotic_partial(x, N).contains(an.exp_integral_e1(x)), (x, N)
    e = an.e1_asymptotic_partial(10, 2)
    assert e.value == pytest.approx(math.exp(-10) / 10 * 0.9, rel=1e-15)
    e = an.e1_asymptotic_partial(10, 1)
    assert e.error_high - e.value == pytest.approx(2 * math.exp(-10) / 100)


def test_expansion():
    assert an.omega_plus_expansion(10**6, 2) == pytest.approx(123.8, abs=0.05)
    assert an.omega_plus_expansion(10**6, 1) == pytest.approx(2000 / math.log(10**6))
    L = math.log(10**6)
    for j in range(2, 7):
        assert an.expansion_term(10**6, j) / an.expansion_term(10**6, j - 1) == pytest.approx(-2 * (j - 1) / L)
    with pytest.raises(DomainError):
        an.omega_plus_expansion(2, 1)


def test_iterated_log_delta_psi():
    assert an.iterated_log(1, math.exp(3)) == pytest.approx(3)
    assert an.iterated_log(2, math.exp(math.e)) == pytest.approx(1)
    assert an.iterated_log(3, 10) == 1
    assert an.delta_c(10**6, 1) == pytest.approx(0.0186, abs=5e-4)
    assert an.delta_c(math.exp(1.0000001), 1) == pytest.approx(math.exp(-1), rel=1e-6)
    grid = [an.delta_c(x, 1) for x in np.geomspace(3, 1e12, 50)]
    assert all(0 < a < 1 for a in grid) and all(b < a for a, b in zip(grid, grid[1:]))
    with pytest.raises(DomainError):
        an.delta_c(2, 1)
    assert an.psi(2.75) == 0.25 and an.psi(3) == -0.5
    for x in np.linspace(-3, 3, 61):
        assert an.psi(x + 1) == pytest.approx(an.psi(x), abs=1e-12)
        assert -0.5 <= an.psi(x) < 0.5


def test_f_kappa_and_li():
    assert an.f_kappa(math.e, 1) == pytest.approx(math.exp(-1))
    # E_1(log 100) by an independent oracle
    assert an.f_kappa(100, 0) == pytest.approx(float(mpmath.e1(mpmath.log(100))), rel=1e-12)
    ts = np.geomspace(1.5, 1e6, 40)
    vals = [an.f_kappa(t, 0) for t in ts]
    assert all(b < a for a, b in zip(vals, vals[1:]))
    assert an.li(2) == 0.0
    assert an.li(10**6) == pytest.approx(float(mpmath.li(10**6) - mpmath.li(2)), abs=1e-6)
    assert abs(an.li(10**6) / 78498 - 1) < 0.003
    lis = [an.li(u) for u in np.linspace(2, 1000, 30)]
    assert all(b > a for a, b in zip(lis, lis[1:]))
    with pytest.raises(DomainError):
        an.li(1.5)


def test_prime_recip_tail_small(sieve_1e5):
    est = an.prime_recip_tail(sieve_1e5, 2, 0)
    assert est.error_high - est.value == pytest.approx(1e-5)
    # sum over all primes of 1/(p(p-1)) is 0.7731566690497...; p = 2 removed
    assert est.contains(0.7731566690497451 - 0.5)
    with pytest.raises(RangeError):
        an.prime_recip_tail(sieve_1e5, 20_000, 0)
    with pytest.raises(UsageError):
        an.prime_recip_tail(sieve_1e5, 1, 0)


def test_lemma_sieve_sum_example(sieve_1e5):
    r = an.lemma_sieve_sum(sieve_1e5, 10**4, 100, 200, 0, 0.5)
    assert r.rhs == pytest.approx(404) and r.holds
    assert an.lemma_sieve_sum(sieve_1e5, 10**4, 100, 200, 1, 0.5).holds
    with pytest.raises(UsageError):
        an.lemma_sieve_sum(sieve_1e5, 10**4, 9999, 10**4, 0, 0.5)
    with pytest.raises(UsageError):
        an.lemma_sieve_sum(sieve_1e5, 10**4, 50, 200, 0, 0.5)  # y < x^eps


def random_lemma_instances(rng, count):
    out = []
    while len(out) < count:
        x = rng.uniform(100, 1e5)
        eps = rng.uniform(0.05, 0.95)
        ymin = x**eps
        if ymin >= x - 1:
            continue
        y = rng.uniform(ymin, x - 1)
        z = rng.uniform(y, x - 1)
        out.append((x, y, z, rng.randint(0, 1), eps))
    return out


def test_lemma_sieve_sum_random(sieve_1e5):
    for inst in random_lemma_instances(random.Random(2024), 100):
        assert an.lemma_sieve_sum(sieve_1e5, *inst).holds, inst


def test_cor_sieve_sum(sieve_1e5):
    n = 10**5
    r = an.cor_sieve_sum(sieve_1e5, n, 0.1)
    assert isinstance(r.lhs, int) and r.lhs >= 0
    assert r.bound_ref == pytest.approx(0.1 * math.sqrt(n))
    lo = n ** (-7 / 16)
    an.cor_sieve_sum(sieve_1e5, n, lo * 1.001)
    with pytest.raises(UsageError):
        an.cor_sieve_sum(sieve_1e5, n, lo * 0.999)


def test_s12(sieve_1e5):
    assert an.s12_empirical(sieve_1e5, 5) == 0.0
    s = an.s12_empirical(sieve_1e5, 10**4)
    assert abs(s) / 10**4**0.49 < 1


def test_fractional_census():
    s = build_sieve(10_000)
    fc = an.fractional_census(s, 10**6, 1750)
    assert fc.threshold == pytest.approx(1 - 10**6 / (16 * 1750**2))
    assert fc.all_counted_divide
    assert fc.reference == pytest.approx(10**6 / (1750 * math.log(10**6)))
    for n in range(400_000, 1_000_000, 37_001):
        v = int(n ** (20 / 37))
        assert an.fractional_census(s, n, v).all_counted_divide
    with pytest.raises(UsageError):
        an.fractional_census(s, 10**6, 3000)
