"""Quadratic reference arithmetic on truncated series.

These routines never go through :mod:`fastexp.transform`; they are the
independent ground truth the fast path is checked against.
"""

from __future__ import annotations

import numpy as np

from .errors import DomainError, NonInvertibleError

__all__ = ["naive_exp", "naive_log", "naive_mul", "naive_reciprocal"]

_ZERO_TOL = 1e-12


def _series(a, n: int) -> np.ndarray:
    """``a`` as a complex array of exactly ``n`` entries (truncated or zero-padded)."""
    a = np.asarray(a, dtype=complex).reshape(-1)[:n]
    if len(a) < n:
        a = np.concatenate([a, np.zeros(n - len(a), dtype=complex)])
    return a


def naive_mul(a, b, n: int) -> np.ndarray:
    """Schoolbook product ``a * b mod x^n``."""
    a = np.asarray(a, dtype=complex).reshape(-1)[:n]
    b = np.asarray(b, dtype=complex).reshape(-1)[:n]
    if len(a) == 0 or len(b) == 0:
        return np.zeros(n, dtype=complex)
    return _series(np.convolve(a, b), n)


def naive_exp(f, n: int) -> np.ndarray:
    """``exp(f) mod x^n`` by the recurrence ``k g[k] = sum_j j f[j] g[k-j]``."""
    f = _series(f, n)
    if n and abs(f[0]) >= _ZERO_TOL:
        raise DomainError("constant term must be zero")
    g = np.zeros(n, dtype=complex)
    if n == 0:
        return g
    g[0] = 1.0
    df = f * np.arange(n)
    for k in range(1, n):
        g[k] = np.dot(df[1 : k + 1], g[k - 1 :: -1]) / k
    return g


def naive_reciprocal(h, n: int) -> np.ndarray:
    """``1/h mod x^n`` by forward substitution."""
    h = _series(h, n)
    if n == 0:
        return h
    if abs(h[0]) < _ZERO_TOL:
        raise NonInvertibleError("constant term is (nearly) zero")
    r = np.zeros(n, dtype=complex)
    inv0 = 1.0 / h[0]
    r[0] = inv0
    for k in range(1, n):
        r[k] = -inv0 * np.dot(h[1 : k + 1], r[k - 1 :: -1])
    return r


def naive_log(g, n: int) -> np.ndarray:
    """``log(g) mod x^n`` for ``g[0] == 1``, via ``delta(log g) = delta(g) / g``."""
    g = _series(g, n)
    if n and abs(g[0] - 1) > 1e-10:
        raise DomainError("log needs constant term 1")
    k = np.arange(n)
    dlog = naive_mul(g * k, naive_reciprocal(g, n), n)
    f = np.zeros(n, dtype=complex)
    f[1:] = dlog[1:] / k[1:]
    return f
