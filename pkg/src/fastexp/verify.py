"""Randomised self-checks of the fast exponential against the quadratic oracle."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .driver import ExpTrace, exp_series
from .errors import SeriesError
from .expcore import algorithm1_exp
from .inputs import random_series, splitmix64
from .oracle import naive_exp, naive_log, naive_mul, naive_reciprocal
from .transform import FftContext

__all__ = ["SuiteResult", "orders_up_to", "run_verification"]

ORACLE_TOL = 1e-8
IDENTITY_TOL = 1e-7


@dataclass
class SuiteResult:
    name: str
    worst: float
    tolerance: float
    cases: int

    @property
    def passed(self) -> bool:
        return self.worst <= self.tolerance

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name:<16} worst={self.worst:.3e} tol={self.tolerance:.0e} cases={self.cases}"


def orders_up_to(max_n: int) -> list[int]:
    """Powers of two up to ``max_n``, ``max_n`` itself and a few ragged sizes."""
    orders = {1 << e for e in range(max_n.bit_length()) if 1 << e <= max_n}
    orders |= {max_n, max(1, 3 * max_n // 4 + 1), 33, 50, 100}
    return sorted(n for n in orders if 1 <= n <= max_n)


def _fast(f, n, inject_fault):
    g = exp_series(f, n)
    if inject_fault:
        # leave g[0] alone so the log suite still sees an admissible input
        g[-1 if n > 1 else 0] += 1e-3
    return g


def run_verification(max_n: int = 512, trials: int = 20, seed: int = 1, inject_fault: bool = False) -> list[SuiteResult]:
    """Run the oracle, inverse, log and count suites; one result per suite."""
    seeds = [int(x) for x in splitmix64(seed, trials)]
    orders = orders_up_to(max_n)
    oracle = inverse = log = 0.0
    cases = 0
    for t in seeds:
        for n in orders:
            f = random_series(t, n)
            g = _fast(f, n, inject_fault)
            ref = naive_exp(f, n)
            oracle = max(oracle, np.abs(g - ref).max() / (1 + np.abs(ref).max()))
            unit = naive_mul(g, exp_series(-f, n), n)
            unit[0] -= 1
            inverse = max(inverse, np.abs(unit).max())
            try:
                log = max(log, np.abs(naive_log(g, n) - f).max())
            except SeriesError:
                log = float("inf")
            cases += 1

    count_err = 0
    count_cases = 0
    for s in (1, 2, 3, 4, 8):
        for m in (2, 4, 8, 16):
            n = 2 * s * m
            f = random_series(s * 1000 + m + seed, n)
            g0 = naive_exp(f[:m], m)
            ctx = FftContext([2 * m])
            algorithm1_exp(ctx, s, f, g0, naive_reciprocal(g0, m))
            count_err = max(count_err, abs(ctx.counters.total(2 * m) - (13 * s - 4)))
            count_cases += 1
    for n in orders:
        trace = ExpTrace()
        exp_series(random_series(seed, n), n, trace=trace)
        for level in trace.levels:
            count_err = max(count_err, abs(level.forward + level.inverse - (13 * level.s - 4)))
            count_cases += 1

    return [
        SuiteResult("oracle", oracle, ORACLE_TOL, cases),
        SuiteResult("inverse", inverse, IDENTITY_TOL, cases),
        SuiteResult("log-roundtrip", log, IDENTITY_TOL, cases),
        SuiteResult("transform-count", float(count_err), 0.0, count_cases),
    ]
