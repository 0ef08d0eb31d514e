"""Base-b expansions, digit sums and trailing (b-1)-runs."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from bernden.errors import UsageError


@dataclass(frozen=True)
class DigitExpansion:
    n: int
    base: int
    digits: tuple[int, ...]  # most significant first; empty for n == 0
    digit_sum: int
    trailing_max_run: int

    def value(self) -> int:
        v = 0
        for d in self.digits:
            v = v * self.base + d
        return v


def _check_base(b: int) -> None:
    if b < 2:
        raise UsageError(f"base must be >= 2, got {b}")


def expand(n: int, b: int) -> DigitExpansion:
    _check_base(b)
    if n < 0:
        raise UsageError(f"n must be non-negative, got {n}")
    rev = []
    m = n
    while m:
        m, r = divmod(m, b)
        rev.append(r)
    run = 0
    for d in rev:
        if d != b - 1:
            break
        run += 1
    return DigitExpansion(n=n, base=b, digits=tuple(reversed(rev)), digit_sum=sum(rev), trailing_max_run=run)


def digit_sum(n: int, b: int) -> int:
    """s_b(n)."""
    _check_base(b)
    s = 0
    while n:
        n, r = divmod(n, b)
        s += r
    return s


def trailing_max_run(n: int, b: int) -> int:
    """Number of trailing base-``b`` digits of ``n`` equal to ``b - 1``."""
    _check_base(b)
    run = 0
    while n and n % b == b - 1:
        n //= b
        run += 1
    return run


def digit_sums(ns: np.ndarray, b: int) -> np.ndarray:
    """s_b(n) for every entry of an int64 array, in one base."""
    _check_base(b)
    m = np.array(ns, dtype=np.int64, copy=True)
    s = np.zeros_like(m)
    while True:
        live = m > 0
        if not live.any():
            return s
        q, r = np.divmod(m, b)
        s += r
        m = q


def digit_sums_over_bases(n, bases: np.ndarray) -> np.ndarray:
    """s_p(n) for every base in ``bases`` (all >= 2); ``n`` may be a scalar
    or an array broadcast against ``bases``."""
    n, bases = np.broadcast_arrays(np.asarray(n, dtype=np.int64), np.asarray(bases, dtype=np.int64))
    m = n.copy()
    s = np.zeros_like(m)
    while True:
        live = m > 0
        if not live.any():
            return s
        q, r = np.divmod(m, bases)
        s += r
        m = q
