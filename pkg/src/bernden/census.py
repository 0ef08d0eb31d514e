"""Batched statistics of P_n over ranges of n.

Work is split into blocks of consecutive n. Each block is computed
independently (numpy over the block, never over individual n), so results do
not depend on block boundaries or on the number of worker processes, and the
merged output is strictly ordered by n.

Per block of n in [lo, hi] (plus n = hi + 1 for transitions):

* P_n^- from base-p digit sums for p*p < n;
* P_n^+ from the interval enumeration m_a = floor((n+a)/(a+1));
* Case-1 witnesses (s_p(n) = p - 1) from base-p digit sums for p*p <= n, and
  for p*p > n from p = n/b + 1 with b | n.
"""

from __future__ import annotations

import math
import os
import time
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, fields
from math import isqrt
from pathlib import Path
from typing import Iterator

import numpy as np

from bernden.analytic import exp_integral_e1
from bernden.digits import digit_sum, digit_sums, digit_sums_over_bases
from bernden.errors import CheckpointMismatchError, RangeError, UsageError
from bernden.pncore import Comparison, compare_products, log_pn_plus_fast, omega_plus_fast
from bernden.primes import PrimeSieve

CENSUS_VERSION = "bernden-census-1"
CSV_HEADER = "n,omega_minus,omega_plus,log_pn_plus,largest_prime,divides,comparison,in_A"
DEFAULT_BLOCK = 10_000
CONJECTURE1_THRESHOLD = 192
THEOREM2_EXPONENT = 20 / 37
# lost/gained log-products closer than this are compared as exact integers
EXACT_COMPARE_GAP = 1e-6
MAX_LISTED = 100


@dataclass(frozen=True)
class CensusRow:
    n: int
    omega_minus: int
    omega_plus: int
    log_pn_plus: float
    largest_prime: int  # 0 when P_n = 1
    divides: bool
    comparison: Comparison
    in_A: bool

    def to_csv(self) -> str:
        return (
            f"{self.n},{self.omega_minus},{self.omega_plus},{self.log_pn_plus!r},"
            f"{self.largest_prime},{int(self.divides)},{int(self.comparison)},{int(self.in_A)}"
        )

    @classmethod
    def from_csv(cls, line: str) -> "CensusRow":
        n, om, op, lg, lp, dv, cmp_, ia = line.strip().split(",")
        return cls(int(n), int(om), int(op), float(lg), int(lp), dv == "1", Comparison(int(cmp_)), ia == "1")


@dataclass
class BlockResult:
    """Column arrays for n = lo..hi."""

    lo: int
    hi: int
    omega_minus: np.ndarray
    omega_plus: np.ndarray
    log_plus: np.ndarray
    largest: np.ndarray
    divides: np.ndarray
    comparison: np.ndarray
    in_A: np.ndarray
    other_witnesses: np.ndarray  # witnesses p != n + 1
    max_witness: np.ndarray
    n_is_prime: np.ndarray
    next_is_prime: np.ndarray
    audit_failures: int  # gained primes with s_p(n) != p - 1

    @property
    def n(self) -> np.ndarray:
        return np.arange(self.lo, self.hi + 1, dtype=np.int64)

    def rows(self) -> Iterator[CensusRow]:
        cols = zip(
            self.n.tolist(),
            self.omega_minus.tolist(),
            self.omega_plus.tolist(),
            self.log_plus.tolist(),
            self.largest.tolist(),
            self.divides.tolist(),
            self.comparison.tolist(),
            self.in_A.tolist(),
        )
        for n, om, op, lg, lp, dv, cm, ia in cols:
            yield CensusRow(n, om, op, lg, lp, dv, Comparison(cm), ia)

    def csv_text(self) -> str:
        cols = zip(
            self.n.tolist(),
            self.omega_minus.tolist(),
            self.omega_plus.tolist(),
            self.log_plus.tolist(),
            self.largest.tolist(),
            self.divides.astype(np.int8).tolist(),
            self.comparison.tolist(),
            self.in_A.astype(np.int8).tolist(),
        )
        return "".join(f"{n},{om},{op},{lg!r},{lp},{dv},{cm},{ia}\n" for n, om, op, lg, lp, dv, cm, ia in cols)


def _check_range(sieve: PrimeSieve, lo: int, hi: int) -> None:
    if lo < 1 or hi < lo:
        raise UsageError(f"census range must satisfy 1 <= lo <= hi, got [{lo}, {hi}]")
    if sieve.limit < (hi + 2) // 2:
        raise RangeError(f"sieve limit {sieve.limit} too small: need limit >= {(hi + 2) // 2}")


def compute_block(sieve: PrimeSieve, lo: int, hi: int) -> BlockResult:
    _check_range(sieve, lo, hi)
    L = hi - lo + 1
    N = np.arange(lo, hi + 2, dtype=np.int64)
    table = sieve.table
    seg = sieve.segment_is_prime(lo, hi + 1)  # primality of lo..hi+1

    idx_parts, p_parts = [], []
    wit = np.zeros(L + 1, dtype=np.int64)
    max_wit = np.zeros(L + 1, dtype=np.int64)

    # small primes: P_n^- membership and witnesses with p*p <= n
    small = sieve.primes[: int(np.searchsorted(sieve.primes, isqrt(hi + 1), side="right"))]
    for p in small.tolist():
        s = digit_sums(N, p)
        sq = p * p
        hit = np.flatnonzero((s >= p) & (sq < N))
        if hit.size:
            idx_parts.append(hit)
            p_parts.append(np.full(hit.size, p, dtype=np.int64))
        w = (s == p - 1) & (sq <= N)
        wit += w
        max_wit[w] = p
    n_minus = sum(part.size for part in idx_parts)

    # P_n^+ by interval enumeration, a ascending
    for a in range(1, isqrt(hi + 1) + 1):
        m = (N + a) // (a + 1)
        ok = np.flatnonzero((m * (a + 1) >= N + 1) & (m * m > N))
        if ok.size == 0:
            continue
        cand = m[ok]
        prime = table[cand]
        if prime.any():
            idx_parts.append(ok[prime])
            p_parts.append(cand[prime])

    # witnesses with p*p > n: n = b (p - 1), rows n <= hi only
    Nr = N[:L]
    for b in range(1, isqrt(hi) + 2):
        div = np.flatnonzero(Nr % b == 0)
        if div.size == 0:
            continue
        nd = Nr[div]
        p = nd // b + 1
        if b == 1:
            prime = seg[div + 1]
        else:
            prime = table[p]
        ok = prime & (p * p > nd) & (nd // p + nd % p == p - 1)
        if ok.any():
            wit[div[ok]] += 1
            max_wit[div[ok]] = np.maximum(max_wit[div[ok]], p[ok])

    if idx_parts:
        pi = np.concatenate(idx_parts)
        pp = np.concatenate(p_parts)
    else:
        pi = np.zeros(0, dtype=np.int64)
        pp = np.zeros(0, dtype=np.int64)
    logp = np.log(pp.astype(np.float64))

    omega_minus = np.bincount(pi[:n_minus], minlength=L + 1)[:L]
    omega_plus = np.bincount(pi[n_minus:], minlength=L + 1)[:L]
    log_plus = np.bincount(pi[n_minus:], weights=logp[n_minus:], minlength=L + 1)[:L]
    largest = np.zeros(L + 1, dtype=np.int64)
    if pp.size:
        np.maximum.at(largest, pi, pp)

    # transitions n -> n+1 through keys (row index, prime)
    K = int(pp.max()) + 1 if pp.size else 1
    in_cur = pi < L
    in_nxt = pi >= 1
    key_cur = pi[in_cur] * K + pp[in_cur]
    key_nxt = (pi[in_nxt] - 1) * K + pp[in_nxt]
    lost = np.setdiff1d(key_cur, key_nxt, assume_unique=True)
    gained = np.setdiff1d(key_nxt, key_cur, assume_unique=True)
    lost_i, lost_p = np.divmod(lost, K)
    gained_i, gained_p = np.divmod(gained, K)
    n_gained = np.bincount(gained_i, minlength=L)
    n_change = n_gained + np.bincount(lost_i, minlength=L)
    dlog = np.bincount(lost_i, weights=np.log(lost_p.astype(np.float64)), minlength=L) - np.bincount(
        gained_i, weights=np.log(gained_p.astype(np.float64)), minlength=L
    )
    comparison = np.sign(dlog).astype(np.int8)
    comparison[n_change == 0] = 0
    close = np.flatnonzero((n_change > 0) & (np.abs(dlog) < EXACT_COMPARE_GAP))
    for i in close.tolist():
        lp = lost_p[lost_i == i].tolist()
        gp = gained_p[gained_i == i].tolist()
        comparison[i] = int(compare_products(lp, gp))

    audit = 0
    if gained.size:
        s_g = digit_sums_over_bases(lo + gained_i, gained_p)
        audit = int(np.count_nonzero(s_g != gained_p - 1))

    next_prime = seg[1 : L + 1]
    return BlockResult(
        lo=lo,
        hi=hi,
        omega_minus=omega_minus.astype(np.int64),
        omega_plus=omega_plus.astype(np.int64),
        log_plus=log_plus,
        largest=largest[:L],
        divides=n_gained == 0,
        comparison=comparison,
        in_A=wit[:L] > 0,
        other_witnesses=wit[:L] - next_prime.astype(np.int64),
        max_witness=max_wit[:L],
        n_is_prime=seg[:L].copy(),
        next_is_prime=next_prime.copy(),
        audit_failures=audit,
    )


# worker-process state
_WORKER_SIEVE: PrimeSieve | None = None


def _init_worker(sieve: PrimeSieve) -> None:
    global _WORKER_SIEVE
    _WORKER_SIEVE = sieve


def _worker_block(bounds: tuple[int, int]) -> BlockResult:
    return compute_block(_WORKER_SIEVE, *bounds)


def block_bounds(lo: int, hi: int, block_size: int) -> list[tuple[int, int]]:
    if block_size < 1:
        raise UsageError(f"block size must be >= 1, got {block_size}")
    return [(a, min(a + block_size - 1, hi)) for a in range(lo, hi + 1, block_size)]


def iter_blocks(
    sieve: PrimeSieve,
    lo: int,
    hi: int,
    block_size: int = DEFAULT_BLOCK,
    threads: int = 1,
    start_block: int = 0,
) -> Iterator[BlockResult]:
    """Blocks of the census over [lo, hi] in ascending order."""
    _check_range(sieve, lo, hi)
    if threads < 1:
        raise UsageError(f"threads must be >= 1, got {threads}")
    bounds = block_bounds(lo, hi, block_size)[start_block:]
    if threads == 1 or len(bounds) <= 1:
        for b in bounds:
            yield compute_block(sieve, *b)
        return
    with ProcessPoolExecutor(max_workers=threads, initializer=_init_worker, initargs=(sieve,)) as pool:
        pending: deque = deque()
        it = iter(bounds)
        for b in it:
            pending.append(pool.submit(_worker_block, b))
            if len(pending) >= 2 * threads:
                break
        while pending:
            yield pending.popleft().result()
            nxt = next(it, None)
            if nxt is not None:
                pending.append(pool.submit(_worker_block, nxt))


def run_census(
    sieve: PrimeSieve, lo: int, hi: int, block_size: int = DEFAULT_BLOCK, threads: int = 1
) -> Iterator[CensusRow]:
    """One CensusRow per n in [lo, hi], ascending."""
    for block in iter_blocks(sieve, lo, hi, block_size, threads):
        yield from block.rows()


@dataclass
class CensusAggregate:
    """Associative running totals over census blocks; merged in block order."""

    lo: int
    hi: int
    rows: int = 0
    count_divides: int = 0
    count_strict_greater: int = 0
    count_equal: int = 0
    count_less: int = 0
    count_divides_and_greater: int = 0
    count_in_A: int = 0
    count_in_A_large: int = 0
    audit_failures: int = 0
    primes_q: int = 0
    q_equal_next: int = 0  # P_q = P_{q+1}
    q_equal_prev: int = 0  # P_{q-1} = P_q
    q_no_other_witness: int = 0
    q_witness_violations: int = 0  # no witness p != q yet P_{q-1} != P_q
    conj1_violation_count: int = 0
    conj1_violations: list = field(default_factory=list)
    conj1_small_failures: list = field(default_factory=list)
    min_ratio: float = math.inf
    min_ratio_n: int = 0
    upper_bound_violations: int = 0  # P(P_n) > (n+1)/2
    equality_mismatches: int = 0  # P(P_n) = (n+1)/2 iff n = 2p - 1 fails

    @property
    def large_witness_y(self) -> float:
        return math.sqrt(math.log(self.hi)) if self.hi > 1 else 1.0

    def update(self, block: BlockResult, sieve: PrimeSieve) -> None:
        n = block.n
        cmp_ = block.comparison
        self.rows += n.size
        self.count_divides += int(block.divides.sum())
        self.count_strict_greater += int((cmp_ == 1).sum())
        self.count_equal += int((cmp_ == 0).sum())
        self.count_less += int((cmp_ == -1).sum())
        self.count_divides_and_greater += int((block.divides & (cmp_ == 1)).sum())
        self.count_in_A += int(block.in_A.sum())
        self.count_in_A_large += int((block.max_witness >= self.large_witness_y).sum())
        self.audit_failures += block.audit_failures

        # primes q <= hi: rows n = q and n = q - 1
        self.primes_q += int(block.n_is_prime.sum())
        self.q_equal_next += int((block.n_is_prime & (cmp_ == 0)).sum())
        prev = block.next_is_prime & (n + 1 <= self.hi)
        self.q_equal_prev += int((prev & (cmp_ == 0)).sum())
        no_wit = prev & (block.other_witnesses == 0)
        self.q_no_other_witness += int(no_wit.sum())
        self.q_witness_violations += int((no_wit & (cmp_ != 0)).sum())

        P = block.largest
        fails = P * P <= n  # includes P_n = 1 (P recorded as 0)
        big = fails & (n > CONJECTURE1_THRESHOLD)
        self.conj1_violation_count += int(big.sum())
        room = MAX_LISTED - len(self.conj1_violations)
        if room > 0:
            self.conj1_violations.extend(n[big][:room].tolist())
        self.conj1_small_failures.extend(n[fails & (n <= CONJECTURE1_THRESHOLD)].tolist())
        have = P > 0
        if have.any():
            ratios = P[have] / n[have].astype(np.float64) ** THEOREM2_EXPONENT
            j = int(np.argmin(ratios))
            if ratios[j] < self.min_ratio:
                self.min_ratio = float(ratios[j])
                self.min_ratio_n = int(n[have][j])
        self.upper_bound_violations += int((2 * P > n + 1).sum())
        half = (n + 1) // 2
        is_2p_minus_1 = (n % 2 == 1) & sieve.table[half]
        self.equality_mismatches += int(((2 * P == n + 1) != is_2p_minus_1).sum())

    # checkpoint serialisation: one key=value per line
    def to_lines(self) -> list[str]:
        out = []
        for f in fields(self):
            v = getattr(self, f.name)
            if isinstance(v, list):
                v = " ".join(str(x) for x in v)
            elif isinstance(v, float):
                v = repr(v)
            out.append(f"agg.{f.name}={v}")
        return out

    @classmethod
    def from_lines(cls, kv: dict[str, str]) -> "CensusAggregate":
        kwargs = {}
        for f in fields(cls):
            raw = kv[f"agg.{f.name}"]
            if f.name in ("conj1_violations", "conj1_small_failures"):
                kwargs[f.name] = [int(x) for x in raw.split()]
            elif f.name == "min_ratio":
                kwargs[f.name] = float(raw)
            else:
                kwargs[f.name] = int(raw)
        return cls(**kwargs)


def aggregate(
    sieve: PrimeSieve, lo: int, hi: int, block_size: int = DEFAULT_BLOCK, threads: int = 1
) -> CensusAggregate:
    agg = CensusAggregate(lo, hi)
    for block in iter_blocks(sieve, lo, hi, block_size, threads):
        agg.update(block, sieve)
    return agg


# checkpointed CSV output

CHECKPOINT_MAGIC = "# bernden census checkpoint v1"


def _write_atomic(path: Path, text: str) -> None:
    tmp = path.with_name(path.name + ".tmp")
    with open(tmp, "w") as fh:
        fh.write(text)
        fh.flush()
        os.fsync(fh.fileno())
    os.replace(tmp, path)


def _read_checkpoint(path: Path) -> dict[str, str]:
    lines = path.read_text().splitlines()
    if not lines or lines[0] != CHECKPOINT_MAGIC:
        raise CheckpointMismatchError(f"{path} is not a census checkpoint")
    kv = {}
    for line in lines[1:]:
        k, _, v = line.partition("=")
        kv[k] = v
    return kv


def write_census(
    sieve: PrimeSieve,
    lo: int,
    hi: int,
    out: str | os.PathLike,
    checkpoint: str | os.PathLike | None = None,
    block_size: int = DEFAULT_BLOCK,
    threads: int = 1,
    stop_after: int | None = None,
) -> CensusAggregate:
    """Write the census CSV for [lo, hi], resuming from ``checkpoint`` if present.

    The checkpoint records the completed block count, the CSV byte length at
    that point and the running aggregate; on resume the CSV is truncated to
    that length, so the final file is byte-identical to an uninterrupted run.
    ``stop_after`` (blocks) exists to simulate interruption.
    """
    _check_range(sieve, lo, hi)
    out = Path(out)
    ck = Path(checkpoint) if checkpoint is not None else None
    start = 0
    agg = CensusAggregate(lo, hi)
    if ck is not None and ck.exists():
        kv = _read_checkpoint(ck)
        expect = {"version": CENSUS_VERSION, "lo": str(lo), "hi": str(hi), "block_size": str(block_size)}
        for k, v in expect.items():
            if kv.get(k) != v:
                raise CheckpointMismatchError(f"checkpoint {k}={kv.get(k)!r} does not match {v!r}")
        start = int(kv["blocks_done"])
        agg = CensusAggregate.from_lines(kv)
        with open(out, "r+b") as fh:
            fh.truncate(int(kv["csv_bytes"]))
        mode = "ab"
    else:
        mode = "wb"

    done = start
    with open(out, mode) as fh:
        if mode == "wb":
            fh.write((CSV_HEADER + "\n").encode())
        for block in iter_blocks(sieve, lo, hi, block_size, threads, start_block=start):
            fh.write(block.csv_text().encode())
            agg.update(block, sieve)
            done += 1
            if ck is not None:
                fh.flush()
                os.fsync(fh.fileno())
                lines = [
                    CHECKPOINT_MAGIC,
                    f"version={CENSUS_VERSION}",
                    f"lo={lo}",
                    f"hi={hi}",
                    f"block_size={block_size}",
                    f"blocks_done={done}",
                    f"csv_bytes={fh.tell()}",
                    *agg.to_lines(),
                ]
                _write_atomic(ck, "\n".join(lines) + "\n")
            if stop_after is not None and done - start >= stop_after:
                break
    return agg


def read_census_csv(path: str | os.PathLike) -> Iterator[CensusRow]:
    with open(path) as fh:
        header = fh.readline().strip()
        if header != CSV_HEADER:
            raise UsageError(f"unexpected census header {header!r}")
        for line in fh:
            yield CensusRow.from_csv(line)


# summaries


def construction_lower_bound(sieve: PrimeSieve, x: int) -> int:
    """sum over sqrt(x+1) < p <= x+1 of floor((x+1)/p) - 1.

    Primes above (x+1)/2 contribute 0, so the sieve need only reach (x+1)/2.
    """
    top = (x + 1) // 2
    if sieve.limit < top:
        raise RangeError(f"sieve limit {sieve.limit} too small: need limit >= {top}")
    ps = sieve.primes[: int(np.searchsorted(sieve.primes, top, side="right"))]
    ps = ps[ps * ps > x + 1]
    return int(((x + 1) // ps - 1).sum())


@dataclass(frozen=True)
class ConstructionInstance:
    n: int
    a: int
    p: int
    s_next: int  # s_p(n+1)
    s_here: int  # s_p(n)

    @property
    def ok(self) -> bool:
        return self.s_next == self.a < self.p and self.s_here == self.a - 2 + self.p >= self.p


def construction_instances(sieve: PrimeSieve, x: int) -> list[ConstructionInstance]:
    """All n = a p - 1 <= x with p > sqrt(x+1), a >= 2, with their digit sums."""
    top = (x + 1) // 2
    if sieve.limit < top:
        raise RangeError(f"sieve limit {sieve.limit} too small: need limit >= {top}")
    out = []
    for p in sieve.primes[: int(np.searchsorted(sieve.primes, top, side="right"))].tolist():
        if p * p <= x + 1:
            continue
        for a in range(2, (x + 1) // p + 1):
            n = a * p - 1
            out.append(ConstructionInstance(n, a, p, digit_sum(n + 1, p), digit_sum(n, p)))
    return out


@dataclass(frozen=True)
class Theorem3Error:
    n: int
    omega_plus: int
    main_term: float  # n E_1(log sqrt n)
    log_pn_plus: float
    omega_err: float
    log_err: float


def theorem3_errors(sieve: PrimeSieve, ns: list[int]) -> list[Theorem3Error]:
    """Relative errors |omega(P_n^+) - n E_1(log sqrt n)|/sqrt n and |log P_n^+ - sqrt n|/sqrt n."""
    out = []
    for n in ns:
        root = math.sqrt(n)
        om = omega_plus_fast(sieve, n)
        lg = log_pn_plus_fast(sieve, n)
        main = n * exp_integral_e1(math.log(root))
        out.append(Theorem3Error(n, om, main, lg, abs(om - main) / root, abs(lg - root) / root))
    return out


@dataclass
class CensusSummary:
    x: int
    lo: int
    count_divides: int
    count_strict_greater: int
    count_equal: int
    count_less: int
    count_divides_and_greater: int
    count_in_A: int
    construction_lower_bound: int
    audit_failures: int
    theorem3_errors: list[Theorem3Error]
    elapsed_seconds: float
    threads: int
    block_size: int

    @property
    def rows(self) -> int:
        return self.x - self.lo + 1

    @property
    def strict_greater_freq(self) -> float:
        return self.count_strict_greater / self.rows

    @property
    def divisibility_failure_freq(self) -> float:
        return 1.0 - self.count_divides / self.rows

    @property
    def construction_ok(self) -> bool:
        # the bound counts n in [1, x]; it says nothing about a partial range
        return self.lo != 1 or self.construction_lower_bound <= self.count_divides_and_greater

    @property
    def ok(self) -> bool:
        return self.construction_ok and self.audit_failures == 0

    def to_text(self) -> str:
        lines = [
            f"x: {self.x}",
            f"lo: {self.lo}",
            f"count_divides: {self.count_divides}",
            f"count_strict_greater: {self.count_strict_greater}",
            f"count_equal: {self.count_equal}",
            f"count_less: {self.count_less}",
            f"count_divides_and_greater: {self.count_divides_and_greater}",
            f"count_in_A: {self.count_in_A}",
            f"construction_lower_bound: {self.construction_lower_bound}",
            f"construction_bound_holds: {str(self.construction_ok).lower() if self.lo == 1 else 'not_applicable'}",
            f"strict_greater_freq: {self.strict_greater_freq!r}",
            f"divisibility_failure_freq: {self.divisibility_failure_freq!r}",
            f"ln2: {math.log(2)!r}",
            f"case_audit_failures: {self.audit_failures}",
        ]
        for e in self.theorem3_errors:
            lines.append(f"theorem3.{e.n}.omega_err: {e.omega_err!r}")
            lines.append(f"theorem3.{e.n}.log_err: {e.log_err!r}")
        lines += [
            f"elapsed_seconds: {self.elapsed_seconds:.3f}",
            f"threads: {self.threads}",
            f"block_size: {self.block_size}",
        ]
        return "\n".join(lines) + "\n"


def summary_from_aggregate(
    sieve: PrimeSieve, agg: CensusAggregate, elapsed: float = 0.0, threads: int = 1, block_size: int = DEFAULT_BLOCK
) -> CensusSummary:
    x = agg.hi
    ns = [10**k for k in range(2, 19) if 10**k <= x]
    return CensusSummary(
        x=x,
        lo=agg.lo,
        count_divides=agg.count_divides,
        count_strict_greater=agg.count_strict_greater,
        count_equal=agg.count_equal,
        count_less=agg.count_less,
        count_divides_and_greater=agg.count_divides_and_greater,
        count_in_A=agg.count_in_A,
        construction_lower_bound=construction_lower_bound(sieve, x),
        audit_failures=agg.audit_failures,
        theorem3_errors=theorem3_errors(sieve, ns),
        elapsed_seconds=elapsed,
        threads=threads,
        block_size=block_size,
    )


def theorem4_summary(sieve: PrimeSieve, x: int, threads: int = 1, block_size: int = DEFAULT_BLOCK) -> CensusSummary:
    """Transition statistics over 1 <= n <= x."""
    t0 = time.perf_counter()
    agg = aggregate(sieve, 1, x, block_size, threads)
    return summary_from_aggregate(sieve, agg, time.perf_counter() - t0, threads, block_size)


@dataclass(frozen=True)
class PrimeEqualitySummary:
    x: int
    primes: int
    equal_next: int  # P_q = P_{q+1}
    equal_prev: int  # P_{q-1} = P_q
    no_other_witness: int
    witness_violations: int
    shape_reference: float  # (log_2 x)^-1, the exception-rate shape with c = 1

    @property
    def ok(self) -> bool:
        return self.witness_violations == 0

    def to_text(self) -> str:
        return (
            f"x: {self.x}\nprimes: {self.primes}\n"
            f"equal_next: {self.equal_next}\nequal_next_fraction: {self.equal_next / max(self.primes, 1)!r}\n"
            f"equal_prev: {self.equal_prev}\nequal_prev_fraction: {self.equal_prev / max(self.primes, 1)!r}\n"
            f"no_other_witness: {self.no_other_witness}\n"
            f"witness_violations: {self.witness_violations}\n"
            f"exception_prev_fraction: {1 - self.equal_prev / max(self.primes, 1)!r}\n"
            f"shape_loglog_inverse: {self.shape_reference!r}\n"
        )


def prime_equality_census(
    sieve: PrimeSieve, x: int, threads: int = 1, block_size: int = DEFAULT_BLOCK, agg: CensusAggregate | None = None
) -> PrimeEqualitySummary:
    """Over primes q <= x, how often P_q = P_{q+1} and P_{q-1} = P_q.

    Hard check: if no prime p != q has s_p(q-1) = p-1 then P_{q-1} = P_q.
    """
    agg = agg or aggregate(sieve, 1, x, block_size, threads)
    return PrimeEqualitySummary(
        x=x,
        primes=agg.primes_q,
        equal_next=agg.q_equal_next,
        equal_prev=agg.q_equal_prev,
        no_other_witness=agg.q_no_other_witness,
        witness_violations=agg.q_witness_violations,
        shape_reference=1.0 / math.log(math.log(x)) if x > 15 else 1.0,
    )


@dataclass(frozen=True)
class Conjecture1Result:
    x: int
    violations: list[int]
    violation_count: int
    small_failures: list[int]  # n <= 192 with P(P_n) <= sqrt(n)
    min_ratio: float  # min P(P_n) / n^(20/37)
    min_ratio_n: int
    upper_bound_violations: int
    equality_mismatches: int

    @property
    def ok(self) -> bool:
        return self.violation_count == 0 and self.upper_bound_violations == 0 and self.equality_mismatches == 0

    def to_text(self) -> str:
        return (
            f"x: {self.x}\nviolations: {self.violation_count}\n"
            f"violation_list: {' '.join(map(str, self.violations))}\n"
            f"small_failures: {' '.join(map(str, self.small_failures))}\n"
            f"min_ratio: {self.min_ratio!r}\nmin_ratio_n: {self.min_ratio_n}\n"
            f"upper_bound_violations: {self.upper_bound_violations}\n"
            f"equality_mismatches: {self.equality_mismatches}\n"
        )


def conjecture1_check(
    sieve: PrimeSieve, x: int, threads: int = 1, block_size: int = DEFAULT_BLOCK, agg: CensusAggregate | None = None
) -> Conjecture1Result:
    """All n in (192, x] with P(P_n)^2 <= n, plus the n <= 192 that fail."""
    agg = agg or aggregate(sieve, 1, x, block_size, threads)
    return Conjecture1Result(
        x=x,
        violations=list(agg.conj1_violations),
        violation_count=agg.conj1_violation_count,
        small_failures=list(agg.conj1_small_failures),
        min_ratio=agg.min_ratio,
        min_ratio_n=agg.min_ratio_n,
        upper_bound_violations=agg.upper_bound_violations,
        equality_mismatches=agg.equality_mismatches,
    )


@dataclass(frozen=True)
class ADensity:
    x: int
    count: int
    density: float
    y: float
    large_witness_count: int  # n with a witness p >= y
    powers_of_two: int


def a_density(
    sieve: PrimeSieve, x: int, threads: int = 1, block_size: int = DEFAULT_BLOCK, agg: CensusAggregate | None = None
) -> ADensity:
    """|A(x)|/x where A(x) = {n <= x : s_p(n) = p - 1 for some prime p}."""
    agg = agg or aggregate(sieve, 1, x, block_size, threads)
    return ADensity(
        x=x,
        count=agg.count_in_A,
        density=agg.count_in_A / x,
        y=agg.large_witness_y,
        large_witness_count=agg.count_in_A_large,
        powers_of_two=x.bit_length(),
    )
