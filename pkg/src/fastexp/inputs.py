"""Seeded random series and the plain-text coefficient format.

The coefficient format is one coefficient per line, ``"re im"`` separated
by a single space, with the power of x given by the line number.  Blank
lines and lines starting with ``#`` are skipped.
"""

from __future__ import annotations

import io
from pathlib import Path

import numpy as np

__all__ = ["format_coeff", "random_series", "read_coeffs", "splitmix64", "write_coeffs"]

_GAMMA = np.uint64(0x9E3779B97F4A7C15)
_MUL1 = np.uint64(0xBF58476D1CE4E5B9)
_MUL2 = np.uint64(0x94D049BB133111EB)


def splitmix64(seed: int, count: int) -> np.ndarray:
    """First ``count`` outputs of the splitmix64 generator started at ``seed``."""
    with np.errstate(over="ignore"):
        state = np.uint64(seed & 0xFFFFFFFFFFFFFFFF) + _GAMMA * np.arange(1, count + 1, dtype=np.uint64)
        z = state
        z = (z ^ (z >> np.uint64(30))) * _MUL1
        z = (z ^ (z >> np.uint64(27))) * _MUL2
        return z ^ (z >> np.uint64(31))


def random_series(seed: int, n: int) -> np.ndarray:
    """``f_0 = 0`` and ``f_j`` uniform in the square ``[-1/(j+1), 1/(j+1)]^2``.

    Draws are consumed as ``re_1, im_1, re_2, im_2, ...``.
    """
    f = np.zeros(n, dtype=complex)
    if n <= 1:
        return f
    bits = splitmix64(seed, 2 * (n - 1))
    unit = (bits >> np.uint64(11)).astype(np.float64) * 2.0**-53
    x = 2.0 * unit - 1.0
    radius = 1.0 / np.arange(2, n + 1)
    f[1:] = (x[0::2] + 1j * x[1::2]) * radius
    return f


def read_coeffs(source) -> np.ndarray:
    """Parse the coefficient format from a path or an open text stream."""
    if isinstance(source, (str, Path)):
        text = Path(source).read_text()
    else:
        text = source.read()
    values = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: expected 're im', got {line!r}")
        try:
            values.append(complex(float(parts[0]), float(parts[1])))
        except ValueError:
            raise ValueError(f"line {lineno}: cannot parse {line!r}") from None
    return np.array(values, dtype=complex)


def format_coeff(x: float) -> str:
    """Shortest round-tripping decimal, integral values without ``.0``."""
    x = float(x)
    if x == 0:
        return "0"
    if x.is_integer() and abs(x) < 1e16:
        return str(int(x))
    return repr(x)


def write_coeffs(coeffs, stream=None) -> str:
    out = stream if stream is not None else io.StringIO()
    for c in np.asarray(coeffs, dtype=complex):
        out.write(f"{format_coeff(c.real)} {format_coeff(c.imag)}\n")
    return out.getvalue() if stream is None else ""
