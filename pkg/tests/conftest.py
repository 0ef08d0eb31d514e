import pytest

from bernden.primes import build_sieve


@pytest.fixture(scope="session")
def sieve_small():
    return build_sieve(200_000)


@pytest.fixture(scope="session")
def sieve_big():
    # enough for every n <= 10^7 and trial division up to 10^14
    return build_sieve(5_000_001)
