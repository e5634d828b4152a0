"""Exponential to arbitrary order: parameter planning, seeding and recursion."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ContractError, DomainError, InvalidOrderError, NonInvertibleError, NumericInputError
from .expcore import algorithm1_exp
from .oracle import naive_exp
from .transform import CountReport, FftContext, is_power_of_two, snapshot_counts

__all__ = [
    "ExpConfig",
    "ExpPlan",
    "ExpTrace",
    "LevelCount",
    "exp_series",
    "newton_reciprocal",
    "plan_parameters",
]

_ZERO_TOL = 1e-12
_DIRECT_MUL = 64


@dataclass(frozen=True)
class ExpConfig:
    naive_threshold: int = 32


@dataclass(frozen=True)
class ExpPlan:
    """How one level of :func:`exp_series` runs.

    A naive plan has ``s == m == 0`` and ``padded_n == n``.
    """

    n: int
    s: int
    m: int
    naive_threshold: int
    padded_n: int

    @property
    def r(self) -> int:
        return 2 * self.s

    @property
    def naive(self) -> bool:
        return self.s == 0


@dataclass(frozen=True)
class LevelCount:
    """Transforms spent by one call of the block kernel."""

    n: int
    s: int
    m: int
    forward: int
    inverse: int


@dataclass
class ExpTrace:
    """Per-level record of a fast exponential, outermost level first."""

    levels: list[LevelCount] = field(default_factory=list)
    counts: CountReport = field(default_factory=CountReport)

    @property
    def top(self) -> LevelCount | None:
        return self.levels[0] if self.levels else None

    @property
    def total_transforms(self) -> int:
        return self.counts.total()


def _nearest_power_of_two(x: float) -> int:
    if x <= 1:
        return 1
    lo = 1 << (int(math.floor(x)).bit_length() - 1)
    hi = 2 * lo
    return lo if x - lo <= hi - x else hi


def plan_parameters(n: int, config: ExpConfig | None = None) -> ExpPlan:
    """Pick ``s`` near ``sqrt(n)/4`` and the least power-of-two ``m`` with ``2sm >= n``.

    >>> plan_parameters(1024)
    ExpPlan(n=1024, s=8, m=64, naive_threshold=32, padded_n=1024)
    """
    config = config or ExpConfig()
    if n < 1:
        raise InvalidOrderError(f"order must be positive, got {n}")
    if n <= config.naive_threshold:
        return ExpPlan(n, 0, 0, config.naive_threshold, n)
    s = _nearest_power_of_two(math.sqrt(n) / 4)
    m = 1
    while 2 * s * m < n:
        m *= 2
    return ExpPlan(n, s, m, config.naive_threshold, 2 * s * m)


def explicit_plan(n: int, s: int, m: int, config: ExpConfig | None = None) -> ExpPlan:
    """User-chosen ``(s, m)``; both must be powers of two with ``2sm >= n``."""
    config = config or ExpConfig()
    if n < 1:
        raise InvalidOrderError(f"order must be positive, got {n}")
    if not (is_power_of_two(s) and is_power_of_two(m)):
        raise ContractError(f"s and m must be powers of two, got s={s}, m={m}")
    if 2 * s * m < n:
        raise ContractError(f"2sm = {2 * s * m} is smaller than n = {n}")
    return ExpPlan(n, s, m, config.naive_threshold, 2 * s * m)


def _mul(a: np.ndarray, b: np.ndarray, n: int) -> np.ndarray:
    """``a * b mod x^n``; uncounted plumbing, direct for short operands."""
    if min(len(a), len(b)) <= _DIRECT_MUL:
        out = np.zeros(n, dtype=complex)
        prod = np.convolve(a, b)[:n]
        out[: len(prod)] = prod
        return out
    size = 1 << max(1, (len(a) + len(b) - 1)).bit_length()
    prod = np.fft.ifft(np.fft.fft(a, size) * np.fft.fft(b, size))
    out = np.zeros(n, dtype=complex)
    k = min(n, len(a) + len(b) - 1)
    out[:k] = prod[:k]
    return out


def newton_reciprocal(h, n: int) -> np.ndarray:
    """``1/h mod x^n`` by precision doubling ``w <- w (2 - h w)``."""
    h = np.asarray(h, dtype=complex).reshape(-1)
    if n < 1:
        raise InvalidOrderError(f"order must be positive, got {n}")
    if len(h) == 0 or abs(h[0]) < _ZERO_TOL:
        raise NonInvertibleError("constant term is (nearly) zero")
    w = np.array([1.0 / h[0]], dtype=complex)
    prec = 1
    while prec < n:
        prec = min(2 * prec, n)
        hw = _mul(h[:prec], w, prec)
        # w (2 - h w) = w - w (h w - 1), and h w - 1 vanishes below the old precision
        hw[0] -= 1.0
        w = np.concatenate([w, np.zeros(prec - len(w), dtype=complex)]) - _mul(w, hw, prec)
    return w


def _plan_lengths(plan: ExpPlan, config: ExpConfig) -> set[int]:
    lengths = set()
    while not plan.naive:
        lengths.add(2 * plan.m)
        plan = plan_parameters(plan.m, config)
    return lengths


def _exp(ctx: FftContext, f: np.ndarray, plan: ExpPlan, config: ExpConfig, trace: ExpTrace | None):
    if plan.naive:
        return naive_exp(f, plan.n)
    n, m = plan.padded_n, plan.m
    f = f[:n]
    slot = None
    if trace is not None:
        slot = len(trace.levels)
        trace.levels.append(None)
    g0 = _exp(ctx, f[:m], plan_parameters(m, config), config, trace)
    u = newton_reciprocal(g0, m)
    before = snapshot_counts(ctx)
    g = algorithm1_exp(ctx, plan.s, f, g0, u)
    if trace is not None:
        spent = snapshot_counts(ctx) - before
        trace.levels[slot] = LevelCount(
            n=plan.n, s=plan.s, m=m, forward=spent.forward[2 * m], inverse=spent.inverse[2 * m]
        )
    return g


def exp_series(
    f,
    n: int,
    *,
    config: ExpConfig | None = None,
    plan: ExpPlan | None = None,
    trace: ExpTrace | None = None,
) -> np.ndarray:
    """``exp(f) mod x^n``.

    Orders up to ``config.naive_threshold`` use the quadratic recurrence;
    larger ones run the block kernel on ``2sm >= n`` coefficients, seeded
    by a recursive call at order ``m``, and truncate.

    Parameters
    ----------
    f : array_like
        Coefficients of f; ``f[0]`` must vanish.  Shorter inputs are
        zero-padded, longer ones truncated to ``n``.
    n : int
        Truncation order.
    config : ExpConfig, optional
        Planning knobs.
    plan : ExpPlan, optional
        Overrides the top-level plan (see :func:`explicit_plan`).
    trace : ExpTrace, optional
        Filled with per-level transform counts.
    """
    config = config or ExpConfig()
    if n < 1:
        raise InvalidOrderError(f"order must be positive, got {n}")
    f = np.asarray(f, dtype=complex).reshape(-1)
    if not np.isfinite(f).all():
        raise NumericInputError("non-finite coefficient in f")
    if len(f) and abs(f[0]) >= _ZERO_TOL:
        raise DomainError("constant term must be zero")
    plan = plan or plan_parameters(n, config)
    if plan.n != n:
        raise ContractError(f"plan is for order {plan.n}, not {n}")
    padded = np.zeros(plan.padded_n, dtype=complex)
    k = min(len(f), n)
    padded[:k] = f[:k]
    ctx = FftContext(_plan_lengths(plan, config))
    g = _exp(ctx, padded, plan, config, trace)
    if trace is not None:
        trace.counts = snapshot_counts(ctx)
    return g[:n]
