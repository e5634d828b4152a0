"""Command-line front end: ``fastexp exp | verify | bench``.

Exit status is 0 on success, 1 when verification fails and 2 on usage or
contract errors.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from dataclasses import asdict, dataclass

import numpy as np

from .driver import ExpTrace, exp_series, explicit_plan, plan_parameters
from .errors import SeriesError
from .inputs import random_series, read_coeffs, write_coeffs
from .oracle import naive_exp
from .verify import run_verification

BENCH_COLUMNS = ["n", "s", "m", "fwd", "inv", "wall_ms_fast", "wall_ms_naive"]


@dataclass
class RunReport:
    n: int
    s: int
    m: int
    forward_2m: int
    inverse_2m: int
    total_transforms_all_levels: int
    wall_ms: float
    max_abs_err: float | None = None
    seed: int | None = None


def run_exp(f, n: int, s: int | None = None, m: int | None = None, check: bool = False, seed=None):
    """Compute ``exp(f) mod x^n`` and the matching :class:`RunReport`."""
    if (s is None) != (m is None):
        raise SeriesError("--s and --m must be given together")
    plan = explicit_plan(n, s, m) if s is not None else plan_parameters(n)
    trace = ExpTrace()
    start = time.perf_counter()
    g = exp_series(f, n, plan=plan, trace=trace)
    wall_ms = (time.perf_counter() - start) * 1e3
    top = trace.top
    report = RunReport(
        n=n,
        s=plan.s,
        m=plan.m,
        forward_2m=top.forward if top else 0,
        inverse_2m=top.inverse if top else 0,
        total_transforms_all_levels=trace.total_transforms,
        wall_ms=wall_ms,
        seed=seed,
    )
    if check:
        report.max_abs_err = float(np.abs(g - naive_exp(f, n)).max())
    return g, report


def _write_report(report: RunReport, path) -> None:
    with open(path, "w") as fh:
        json.dump(asdict(report), fh, indent=2)
        fh.write("\n")


def cmd_exp(args) -> int:
    if (args.input is None) == (args.random is None):
        raise SeriesError("give exactly one of an input file or --random SEED")
    if args.random is not None:
        f = random_series(args.random, args.n)
    else:
        f = read_coeffs(sys.stdin if args.input == "-" else args.input)
    g, report = run_exp(f, args.n, args.s, args.m, check=args.check, seed=args.random)

    out = sys.stdout
    if args.format == "json":
        json.dump({"report": asdict(report), "coefficients": [[c.real, c.imag] for c in g]}, out, indent=2)
        out.write("\n")
    elif args.format == "csv":
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["k", "re", "im"])
        for k, c in enumerate(g):
            writer.writerow([k, repr(float(c.real)), repr(float(c.imag))])
    else:
        write_coeffs(g, out)
    if args.report:
        _write_report(report, args.report)
    return 0


def cmd_verify(args) -> int:
    results = run_verification(args.max_n, args.trials, args.seed, inject_fault=args.inject_fault)
    for r in results:
        print(r.line())
    ok = all(r.passed for r in results)
    print("ALL PASS" if ok else "VERIFICATION FAILED")
    return 0 if ok else 1


def _best_ms(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best * 1e3


def bench_rows(n_list, repeat: int = 1, seed: int = 0) -> list[dict]:
    rows = []
    for n in n_list:
        f = random_series(seed, n)
        _, report = run_exp(f, n)
        rows.append(
            {
                "n": n,
                "s": report.s,
                "m": report.m,
                "fwd": report.forward_2m,
                "inv": report.inverse_2m,
                "wall_ms_fast": _best_ms(lambda: exp_series(f, n), repeat),
                "wall_ms_naive": _best_ms(lambda: naive_exp(f, n), repeat),
            }
        )
    return rows


def cmd_bench(args) -> int:
    rows = bench_rows(args.n_list, args.repeat, args.seed)
    if args.format == "json":
        json.dump(rows, sys.stdout, indent=2)
        sys.stdout.write("\n")
    else:
        writer = csv.DictWriter(sys.stdout, fieldnames=BENCH_COLUMNS, lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({k: (f"{v:.3f}" if isinstance(v, float) else v) for k, v in row.items()})
    return 0


def _n_list(text: str) -> list[int]:
    try:
        values = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of integers: {text!r}") from None
    if not values or min(values) < 1:
        raise argparse.ArgumentTypeError("orders must be positive")
    return values


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fastexp", description="Fast exponentials of power series.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("exp", help="compute exp(f) mod x^n")
    p.add_argument("input", nargs="?", help="coefficient file ('-' for stdin)")
    p.add_argument("--random", type=int, metavar="SEED", help="use a seeded random f instead of a file")
    p.add_argument("--n", type=int, required=True, help="truncation order")
    p.add_argument("--s", type=int, help="block pairs at the top level (power of two)")
    p.add_argument("--m", type=int, help="block size at the top level (power of two)")
    p.add_argument("--format", choices=["json", "csv", "coeffs"], default="coeffs")
    p.add_argument("--check", action="store_true", help="also report max error against the naive recurrence")
    p.add_argument("--report", metavar="PATH", help="write the run report as JSON")
    p.set_defaults(func=cmd_exp)

    p = sub.add_parser("verify", help="run randomised checks against the naive oracle")
    p.add_argument("--max-n", type=int, default=512)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="time the fast path against the naive recurrence")
    p.add_argument("--n-list", type=_n_list, default=[64, 256, 1024, 4096])
    p.add_argument("--repeat", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    for name in ("n", "max_n", "trials", "repeat"):
        value = getattr(args, name, None)
        if value is not None and value < 1:
            parser.error(f"--{name.replace('_', '-')} must be positive")
    try:
        return args.func(args)
    except (SeriesError, ValueError, OSError) as exc:
        print(f"fastexp: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
