"""Counted complex FFTs of power-of-two length.

Convention: with ``w = exp(2*pi*i/L)`` the forward transform evaluates a
polynomial at the powers of ``w``,

    F[j] = sum_t c[t] * w**(t*j),

and the inverse is ``c[k] = (1/L) * sum_j F[j] * w**(-j*k)``.  Every call
to :func:`forward_transform` or :func:`inverse_transform` bumps exactly one
tally of the context's :class:`CountReport`; nothing else touches them.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .errors import InvalidLengthError, NumericInputError

__all__ = [
    "CountReport",
    "FftContext",
    "Transform",
    "forward_transform",
    "inverse_transform",
    "is_power_of_two",
    "snapshot_counts",
]


def is_power_of_two(n: int) -> bool:
    return isinstance(n, (int, np.integer)) and n >= 1 and (n & (n - 1)) == 0


@dataclass(frozen=True)
class Transform:
    """Fourier image of a zero-padded block."""

    values: np.ndarray

    def __post_init__(self):
        n = len(self.values)
        if n < 2 or n & (n - 1):
            raise InvalidLengthError(f"transform length {n} is not a power of two >= 2")

    @property
    def len(self) -> int:
        return len(self.values)


@dataclass
class CountReport:
    """Forward/inverse transform tallies keyed by transform length."""

    forward: Counter = field(default_factory=Counter)
    inverse: Counter = field(default_factory=Counter)

    def copy(self) -> "CountReport":
        return CountReport(Counter(self.forward), Counter(self.inverse))

    def total(self, length: int | None = None) -> int:
        if length is None:
            return sum(self.forward.values()) + sum(self.inverse.values())
        return self.forward[length] + self.inverse[length]

    def __sub__(self, other: "CountReport") -> "CountReport":
        fwd = Counter(self.forward)
        inv = Counter(self.inverse)
        fwd.subtract(other.forward)
        inv.subtract(other.inverse)
        return CountReport(+fwd, +inv)

    def as_dict(self) -> dict:
        return {
            "forward": {int(k): v for k, v in sorted(self.forward.items())},
            "inverse": {int(k): v for k, v in sorted(self.inverse.items())},
        }


class FftContext:
    """Root-of-unity tables and operation counters for a set of lengths.

    One context belongs to one thread at a time.  Lengths are fixed at
    construction; asking for any other length raises
    :class:`InvalidLengthError`.

    Parameters
    ----------
    lengths : iterable of int
        Power-of-two transform lengths (each >= 2) this context supports.
    """

    def __init__(self, lengths: Iterable[int] = ()):
        self.root_tables: dict[int, np.ndarray] = {}
        self._twists: dict[int, np.ndarray] = {}
        self.counters = CountReport()
        for n in lengths:
            self.add_length(n)

    @classmethod
    def up_to(cls, max_length: int) -> "FftContext":
        """Context supporting every power of two from 2 to ``max_length``."""
        if not is_power_of_two(max_length) or max_length < 2:
            raise InvalidLengthError(f"max length {max_length} is not a power of two >= 2")
        return cls(1 << e for e in range(1, max_length.bit_length()))

    def add_length(self, n: int) -> None:
        if not is_power_of_two(n) or n < 2:
            raise InvalidLengthError(f"transform length {n} is not a power of two >= 2")
        if n in self.root_tables:
            return
        roots = np.exp(2j * np.pi * np.arange(n) / n)
        self.root_tables[n] = roots
        # image of x**(n/2): w**(j*n/2) = (-1)**j
        self._twists[n] = roots[(np.arange(n) * (n // 2)) % n]

    @property
    def lengths(self) -> list[int]:
        return sorted(self.root_tables)

    def supports(self, n: int) -> bool:
        return n in self.root_tables

    def half_shift(self, n: int) -> np.ndarray:
        """Pointwise image of ``x**(n/2)`` under the length-``n`` transform."""
        self._check(n)
        return self._twists[n]

    def _check(self, n: int) -> None:
        if n not in self.root_tables:
            if not is_power_of_two(n) or n < 2:
                raise InvalidLengthError(f"transform length {n} is not a power of two >= 2")
            raise InvalidLengthError(f"length {n} not supported by this context {self.lengths}")


def forward_transform(ctx: FftContext, coeffs, length: int) -> Transform:
    """Evaluate ``coeffs`` (zero-padded to ``length``) at the length-th roots of unity."""
    ctx._check(length)
    c = np.asarray(coeffs, dtype=complex)
    if c.ndim != 1 or len(c) > length:
        raise InvalidLengthError(f"{len(c)} coefficients do not fit a length-{length} transform")
    if not np.isfinite(c).all():
        raise NumericInputError("non-finite coefficient passed to forward_transform")
    # numpy's ifft uses exp(+2*pi*i/L) with a 1/L factor
    values = np.fft.ifft(c, length) * length
    ctx.counters.forward[length] += 1
    return Transform(values)


def inverse_transform(ctx: FftContext, t: Transform) -> np.ndarray:
    """Interpolate a transform back to its ``t.len`` coefficients."""
    n = t.len
    ctx._check(n)
    coeffs = np.fft.fft(t.values) / n
    ctx.counters.inverse[n] += 1
    return coeffs


def snapshot_counts(ctx: FftContext) -> CountReport:
    """Copy of the current tallies (the context keeps counting)."""
    return ctx.counters.copy()
