"""Command-line front end.

Exit codes: 0 success, 1 a verification failed, 2 usage error, 3 range or
resource error. Reports are ``key: value`` lines on stdout.
"""

from __future__ import annotations

import argparse
import math
import os
import random
import sys
import time

from bernden import analytic, census, diophantine
from bernden.bernoulli import bernoulli_numbers, bernoulli_poly, btilde_poly, poly_denominator
from bernden.errors import CheckpointMismatchError, RangeError, ResourceError, UsageError
from bernden.fixtures import FixtureMissing, load_fixtures, lookup, recip_tail_tolerance
from bernden.pncore import pn_record, qn
from bernden.primes import build_sieve, default_limit

THREADS_ENV = "BERNDEN_THREADS"
HELP_WIDTH = 88


class VerificationFailed(Exception):
    pass


def _formatter(prog):
    return argparse.HelpFormatter(prog, width=HELP_WIDTH)


def _default_threads() -> int:
    raw = os.environ.get(THREADS_ENV, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bernden",
        description="Denominators of Bernoulli polynomials: P_n, its prime split, censuses and estimates.",
        formatter_class=_formatter,
    )
    parser.add_argument("--sieve-limit", type=int, help="override the automatically derived sieve limit")
    parser.add_argument("--format", choices=["text", "csv"], default="text", help="report format (default text)")
    parser.add_argument(
        "--threads", type=int, default=_default_threads(), help=f"worker processes (default ${THREADS_ENV} or 1)"
    )
    parser.add_argument("--fixtures", help="calibrated-threshold file (default: the packaged one)")
    parser.add_argument("--strict", action="store_true", help="fail when a needed fixture is missing")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", required=True)

    p = sub.add_parser("compute", help="P_n record, Q_n and exact P_n for one n", formatter_class=_formatter)
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser(
        "verify-bernoulli", help="check denominators of B_n(X) and Btilde_n(X) exactly", formatter_class=_formatter
    )
    p.add_argument("--max", type=int, required=True, dest="max_n")

    p = sub.add_parser("census", help="per-n CSV over [min, max] with transition summary", formatter_class=_formatter)
    p.add_argument("--max", type=int, required=True, dest="max_n")
    p.add_argument("--min", type=int, default=1, dest="min_n")
    p.add_argument("--out", help="CSV path (default: stdout, summary to stderr)")
    p.add_argument("--checkpoint", help="checkpoint path; resumes when it exists")
    p.add_argument("--block-size", type=int, default=census.DEFAULT_BLOCK)

    p = sub.add_parser("asymptotics", help="omega(P_n^+) and log P_n^+ against their main terms", formatter_class=_formatter)
    p.add_argument("--n-list", type=int, nargs="+", required=True)
    p.add_argument("--terms", type=int, default=4, help="expansion terms to compare (default 4)")

    p = sub.add_parser("conjecture1", help="n in (192, max] with P(P_n) <= sqrt(n)", formatter_class=_formatter)
    p.add_argument("--max", type=int, required=True, dest="max_n")

    p = sub.add_parser("prime-equality", help="P_q vs P_(q+1) and P_(q-1) vs P_q over primes q", formatter_class=_formatter)
    p.add_argument("--max", type=int, required=True, dest="max_n")

    p = sub.add_parser("diophantine", help="explicit digit-sum and linear-form bounds", formatter_class=_formatter)
    dsub = p.add_subparsers(dest="which", metavar="KIND", required=True)
    q = dsub.add_parser("stewart", help="measured s_p(n)+s_q(n) next to the explicit bound", formatter_class=_formatter)
    q.add_argument("--samples", type=int, default=5)
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--max-n", type=int, default=10**9)
    q.add_argument("--primes", type=int, nargs="+", default=[2, 3, 5, 7, 11, 13])
    q = dsub.add_parser("matveev", help="evaluate the linear-forms lower bound", formatter_class=_formatter)
    q.add_argument("--heights", type=float, nargs="+", required=True)
    q.add_argument("--D", type=float, default=1.0)

    p = sub.add_parser("analytic", help="special functions and sieve-sum checks", formatter_class=_formatter)
    asub = p.add_subparsers(dest="which", metavar="KIND", required=True)
    q = asub.add_parser("e1", help="E_1(x) with its bracket and asymptotic partial sums", formatter_class=_formatter)
    q.add_argument("--x", type=float, required=True)
    q.add_argument("--terms", type=int, default=3)
    q = asub.add_parser("delta", help="delta_c(x)", formatter_class=_formatter)
    q.add_argument("--x", type=float, required=True)
    q.add_argument("--c", type=float, default=1.0)
    q = asub.add_parser("fractional-census", help="primes 2v<p<3v with large {n/p}", formatter_class=_formatter)
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--v", type=int, required=True)
    q = asub.add_parser("lemma-sums", help="sieve-sum inequality, corollary ratio and S_12", formatter_class=_formatter)
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--alpha", type=float, default=0.1)
    q.add_argument("--epsilon", type=float, default=0.5)
    q.add_argument("--y", type=float, help="default: sqrt(n)")
    q.add_argument("--z", type=float, help="default: 2 y")
    q.add_argument("--c", type=float, default=1.0)
    q = asub.add_parser("tail", help="prime reciprocal tail against F_kappa", formatter_class=_formatter)
    q.add_argument("--t", type=float, required=True)
    q.add_argument("--kappa", type=int, choices=[0, 1], default=0)
    q.add_argument("--limit", type=int, default=10**8)
    return parser


def _emit(pairs: list[tuple[str, object]], fmt: str, out=None) -> None:
    out = out or sys.stdout
    if fmt == "csv":
        out.write(",".join(k for k, _ in pairs) + "\n")
        out.write(",".join(_fmt(v) for _, v in pairs) + "\n")
    else:
        for k, v in pairs:
            out.write(f"{k}: {_fmt(v)}\n")


def _fmt(v) -> str:
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, (list, tuple)):
        return " ".join(_fmt(x) for x in v)
    return str(v)


def _sieve(args, x_max: int, at_least: int = 0):
    limit = args.sieve_limit or max(default_limit(x_max), at_least)
    return build_sieve(limit)


def _fixtures(args) -> dict:
    try:
        return load_fixtures(args.fixtures)
    except FixtureMissing:
        if args.strict:
            raise
        return {}


def _threshold(args, fixtures: dict, *keys):
    try:
        return lookup(fixtures, *keys)
    except FixtureMissing:
        if args.strict:
            raise
        return None


def cmd_compute(args) -> None:
    n = args.n
    s = _sieve(args, n)
    rec = pn_record(s, n)
    pn = rec.value()
    q = qn(n)
    _emit(
        [
            ("n", n),
            ("minus_primes", list(rec.minus_primes)),
            ("plus_primes", list(rec.plus_primes)),
            ("omega_minus", rec.omega_minus),
            ("omega_plus", rec.omega_plus),
            ("log_pn_plus", rec.log_pn_plus),
            ("largest_prime", rec.largest_prime or 0),
            ("P_n", pn),
            ("Q_n", q),
            ("lcm_P_Q", math.lcm(pn, q)),
        ],
        args.format,
    )


def cmd_verify_bernoulli(args) -> None:
    M = args.max_n
    if M < 1:
        raise UsageError("--max must be >= 1")
    s = _sieve(args, M)
    bernoulli_numbers(M)
    for n in range(1, M + 1):
        pn = pn_record(s, n).value()
        q = qn(n)
        if poly_denominator(btilde_poly(n)) != pn:
            raise VerificationFailed(f"denominator of Btilde_{n}(X) differs from P_{n} = {pn}")
        if poly_denominator(bernoulli_poly(n)) != math.lcm(pn, q):
            raise VerificationFailed(f"denominator of B_{n}(X) differs from lcm(P_{n}, Q_{n})")
        if n % 2 == 0 and bernoulli_numbers(n)[n].denominator != q:
            raise VerificationFailed(f"denominator of B_{n} differs from Q_{n} = {q}")
    _emit([("max", M), ("checked", M), ("status", "ok")], args.format)


def cmd_census(args) -> None:
    s = _sieve(args, args.max_n)
    t0 = time.perf_counter()
    if args.out:
        agg = census.write_census(
            s, args.min_n, args.max_n, args.out, args.checkpoint, block_size=args.block_size, threads=args.threads
        )
        report = sys.stdout
    else:
        if args.checkpoint:
            raise UsageError("--checkpoint needs --out")
        agg = census.CensusAggregate(args.min_n, args.max_n)
        sys.stdout.write(census.CSV_HEADER + "\n")
        for block in census.iter_blocks(s, args.min_n, args.max_n, args.block_size, args.threads):
            sys.stdout.write(block.csv_text())
            agg.update(block, s)
        report = sys.stderr
    summary = census.summary_from_aggregate(s, agg, time.perf_counter() - t0, args.threads, args.block_size)
    report.write(summary.to_text())
    if not summary.ok:
        raise VerificationFailed("census hard check failed (construction bound or case audit)")


def cmd_asymptotics(args) -> None:
    fixtures = _fixtures(args)
    omax = _threshold(args, fixtures, "theorem3", "omega_rel_err_max")
    lmax = _threshold(args, fixtures, "theorem3", "log_rel_err_max")
    s = _sieve(args, max(args.n_list))
    failed = []
    rows = []
    for e in census.theorem3_errors(s, args.n_list):
        exp_terms = []
        for N in range(1, args.terms + 1):
            diff = abs(e.main_term - analytic.omega_plus_expansion(e.n, N))
            nxt = abs(analytic.expansion_term(e.n, N + 1))
            exp_terms.append((N, diff, nxt))
            if diff > nxt:
                failed.append(f"expansion N={N} at n={e.n}")
        if omax is not None and e.omega_err > omax:
            failed.append(f"omega error at n={e.n}")
        if lmax is not None and e.log_err > lmax:
            failed.append(f"log error at n={e.n}")
        rows.append((e, exp_terms))
    if args.format == "csv":
        sys.stdout.write("n,omega_plus,main_term,omega_err,log_pn_plus,log_err\n")
        for e, _ in rows:
            sys.stdout.write(f"{e.n},{e.omega_plus},{e.main_term!r},{e.omega_err!r},{e.log_pn_plus!r},{e.log_err!r}\n")
    else:
        for e, exp_terms in rows:
            pairs = [
                (f"n{e.n}.omega_plus", e.omega_plus),
                (f"n{e.n}.main_term", e.main_term),
                (f"n{e.n}.omega_err", e.omega_err),
                (f"n{e.n}.log_pn_plus", e.log_pn_plus),
                (f"n{e.n}.log_err", e.log_err),
            ]
            for N, diff, nxt in exp_terms:
                pairs.append((f"n{e.n}.expansion{N}.diff", diff))
                pairs.append((f"n{e.n}.expansion{N}.next_term", nxt))
            _emit(pairs, "text")
        _emit([("omega_threshold", omax if omax is not None else "none"), ("log_threshold", lmax if lmax is not None else "none")], "text")
    if failed:
        raise VerificationFailed("; ".join(failed))


def cmd_conjecture1(args) -> None:
    s = _sieve(args, args.max_n)
    res = census.conjecture1_check(s, args.max_n, threads=args.threads)
    sys.stdout.write(res.to_text())
    if not res.ok:
        raise VerificationFailed("conjecture 1 desk check failed")


def cmd_prime_equality(args) -> None:
    s = _sieve(args, args.max_n)
    res = census.prime_equality_census(s, args.max_n, threads=args.threads)
    sys.stdout.write(res.to_text())
    if not res.ok:
        raise VerificationFailed("a prime without witnesses has P_(q-1) != P_q")


def cmd_diophantine(args) -> None:
    if args.which == "matveev":
        inp = diophantine.MatveevInput(len(args.heights), tuple(args.heights), args.D)
        _emit([("k", inp.k), ("D", inp.D), ("bound", diophantine.matveev_bound(inp))], args.format)
        return
    rng = random.Random(args.seed)
    ns = sorted(rng.randint(26, args.max_n) for _ in range(args.samples))
    samples = diophantine.stewart_report(ns, args.primes)
    sys.stdout.write("n,p,q,digit_sum_total,rhs,valid\n")
    for r in samples:
        sys.stdout.write(f"{r.n},{r.p},{r.q},{r.digit_sum_total},{r.rhs!r},{str(r.valid).lower()}\n")


def cmd_analytic(args) -> None:
    w = args.which
    if w == "e1":
        lo, hi = analytic.e1_bracket(args.x)
        val = analytic.exp_integral_e1(args.x)
        pairs = [("x", args.x), ("e1", val), ("bracket_low", lo), ("bracket_high", hi), ("in_bracket", lo < val < hi)]
        for N in range(1, args.terms + 1):
            est = analytic.e1_asymptotic_partial(args.x, N)
            pairs += [(f"partial{N}", est.value), (f"partial{N}.contains", est.contains(val))]
        _emit(pairs, args.format)
    elif w == "delta":
        _emit([("x", args.x), ("c", args.c), ("delta_c", analytic.delta_c(args.x, args.c))], args.format)
    elif w == "fractional-census":
        s = _sieve(args, 0, at_least=3 * args.v)
        r = analytic.fractional_census(s, args.n, args.v)
        _emit(
            [
                ("n", args.n),
                ("v", args.v),
                ("threshold", r.threshold),
                ("count", r.count),
                ("divisor_count", r.divisor_count),
                ("reference", r.reference),
                ("ratio", r.ratio),
                ("divisor_ratio", r.divisor_ratio),
                ("all_counted_divide", r.all_counted_divide),
            ],
            args.format,
        )
        if not r.all_counted_divide:
            raise VerificationFailed("a counted prime does not divide P_n^+")
    elif w == "lemma-sums":
        n = args.n
        root = math.sqrt(n)
        top = root / analytic.delta_c(root, args.c) if root > math.e else root
        s = _sieve(args, 0, at_least=max(n, int(top) + 1))
        y = args.y if args.y is not None else root
        z = args.z if args.z is not None else 2 * y
        lem = analytic.lemma_sieve_sum(s, n, y, z, 0, args.epsilon)
        lem1 = analytic.lemma_sieve_sum(s, n, y, z, 1, args.epsilon)
        cor = analytic.cor_sieve_sum(s, n, args.alpha)
        s12 = analytic.s12_empirical(s, n, args.c)
        _emit(
            [
                ("n", n),
                ("lemma.k0.lhs", lem.lhs),
                ("lemma.k0.rhs", lem.rhs),
                ("lemma.k0.holds", lem.holds),
                ("lemma.k1.lhs", lem1.lhs),
                ("lemma.k1.rhs", lem1.rhs),
                ("lemma.k1.holds", lem1.holds),
                ("cor.lhs", cor.lhs),
                ("cor.bound_ref", cor.bound_ref),
                ("cor.ratio", cor.ratio),
                ("s12", s12),
                ("s12_over_n049", abs(s12) / n**0.49),
            ],
            args.format,
        )
        if not (lem.holds and lem1.holds):
            raise VerificationFailed("sieve-sum inequality violated")
    elif w == "tail":
        s = _sieve(args, 0, at_least=args.limit)
        est = analytic.prime_recip_tail(s, args.t, args.kappa)
        F = analytic.f_kappa(args.t, args.kappa)
        pairs = [
            ("t", args.t),
            ("kappa", args.kappa),
            ("limit", s.limit),
            ("value", est.value),
            ("upper", est.error_high),
            ("F_kappa", F),
            ("diff", est.value - F),
        ]
        try:
            tol = recip_tail_tolerance(_fixtures(args), args.kappa, args.t, s.limit)
        except FixtureMissing:
            if args.strict:
                raise
            tol = None
        pairs.append(("tolerance", tol if tol is not None else "none"))
        _emit(pairs, args.format)
        if tol is not None and max(abs(est.value - F), abs(est.error_high - F)) > tol:
            raise VerificationFailed("tail differs from F_kappa beyond the calibrated tolerance")


COMMANDS = {
    "compute": cmd_compute,
    "verify-bernoulli": cmd_verify_bernoulli,
    "census": cmd_census,
    "asymptotics": cmd_asymptotics,
    "conjecture1": cmd_conjecture1,
    "prime-equality": cmd_prime_equality,
    "diophantine": cmd_diophantine,
    "analytic": cmd_analytic,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.threads < 1:
        print("bernden: --threads must be >= 1", file=sys.stderr)
        return 2
    try:
        COMMANDS[args.command](args)
    except VerificationFailed as exc:
        print(f"bernden: verification failed: {exc}", file=sys.stderr)
        return 1
    except (UsageError, CheckpointMismatchError) as exc:
        print(f"bernden: {exc}", file=sys.stderr)
        return 2
    except FixtureMissing as exc:
        print(f"bernden: {exc.args[0]}", file=sys.stderr)
        return 2
    except (RangeError, ResourceError) as exc:
        print(f"bernden: {exc}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
