"""Block decomposition ``f = f[0] + f[1] X + f[2] X^2 + ...`` with ``X = x^m``.

Each block may carry a write-once cached transform of length ``2m``.  The
workhorse is :func:`block_product`, which extracts a single X-block of a
product from cached transforms at the price of one inverse transform.
"""

from __future__ import annotations

import numpy as np

from .errors import CacheError, MissingTransformError, NonIntegrableConstantError
from .transform import FftContext, Transform, forward_transform, inverse_transform

__all__ = [
    "BlockSeries",
    "block_product",
    "cache_transform",
    "delta",
    "delta_k_apply",
    "delta_k_inverse",
    "join_blocks",
    "split_blocks",
]

_ZERO_TOL = 1e-12


class BlockSeries:
    """A fixed number of length-``m`` blocks plus their optional transforms.

    Blocks live as rows of ``coeffs`` (shape ``(nblocks, m)``); transforms as
    rows of ``transforms`` (shape ``(nblocks, 2m)``), valid where ``cached``
    is set.
    """

    def __init__(self, m: int, nblocks: int):
        if m < 1:
            raise ValueError(f"block size must be positive, got {m}")
        self.m = m
        self.coeffs = np.zeros((nblocks, m), dtype=complex)
        self.transforms = np.zeros((nblocks, 2 * m), dtype=complex)
        self.cached = np.zeros(nblocks, dtype=bool)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, k: int) -> np.ndarray:
        return self.coeffs[k]

    def set_block(self, k: int, block) -> None:
        self._check_index(k)
        if self.cached[k]:
            raise CacheError(f"block {k} is frozen by its cached transform")
        self.coeffs[k] = block

    def adopt(self, k: int, other: "BlockSeries", j: int) -> None:
        """Copy block ``j`` of ``other`` into slot ``k``, cached transform included."""
        self.set_block(k, other.coeffs[j])
        if other.cached[j]:
            self.transforms[k] = other.transforms[j]
            self.cached[k] = True

    def transform(self, k: int) -> Transform:
        if not self.cached[k]:
            raise MissingTransformError(f"no cached transform for block {k}")
        return Transform(self.transforms[k])

    def _check_index(self, k: int) -> None:
        if not 0 <= k < len(self):
            raise CacheError(f"block index {k} out of range for {len(self)} blocks")

    def __repr__(self) -> str:
        return f"BlockSeries(m={self.m}, nblocks={len(self)}, cached={int(self.cached.sum())})"


def split_blocks(f, m: int, nblocks: int) -> BlockSeries:
    f = np.asarray(f, dtype=complex)
    if len(f) > nblocks * m:
        raise ValueError(f"series of length {len(f)} does not fit {nblocks} blocks of size {m}")
    b = BlockSeries(m, nblocks)
    b.coeffs.reshape(-1)[: len(f)] = f
    return b


def join_blocks(b: BlockSeries) -> np.ndarray:
    return b.coeffs.reshape(-1).copy()


def cache_transform(ctx: FftContext, b: BlockSeries, k: int) -> None:
    """Store the length-2m transform of block ``k``; allowed once per block."""
    b._check_index(k)
    if b.cached[k]:
        raise CacheError(f"transform of block {k} already cached")
    b.transforms[k] = forward_transform(ctx, b.coeffs[k], 2 * b.m).values
    b.cached[k] = True


def _diagonal(a: BlockSeries, b: BlockSeries, d: int, a_len: int, b_len: int):
    """Pointwise sum of A_i * B_(d-i) over the admissible i, or None if empty."""
    lo = max(0, d - b_len + 1)
    hi = min(d, a_len - 1)
    if d < 0 or lo > hi:
        return None
    if not (a.cached[lo : hi + 1].all() and b.cached[d - hi : d - lo + 1].all()):
        raise MissingTransformError(f"block product needs cached transforms on diagonal {d}")
    return (a.transforms[lo : hi + 1] * b.transforms[d - hi : d - lo + 1][::-1]).sum(axis=0)


def block_product(
    ctx: FftContext,
    a: BlockSeries,
    b: BlockSeries,
    k: int,
    *,
    a_len: int | None = None,
    b_len: int | None = None,
) -> np.ndarray:
    """Block ``k`` of ``a * b`` from cached transforms and one inverse transform.

    Only the first ``a_len`` blocks of ``a`` and ``b_len`` blocks of ``b``
    take part (the rest count as zero).  The low half of diagonal ``k`` and
    the high half of diagonal ``k - 1`` land in block ``k``; the latter is
    moved down by multiplying with the image of ``x^m``, i.e. ``(-1)^j``,
    so that cyclic wraparound folds it into the low half.

    Raises
    ------
    MissingTransformError
        If any participating block lacks a cached transform.
    """
    if a.m != b.m:
        raise ValueError(f"block sizes differ: {a.m} != {b.m}")
    m = a.m
    a_len = len(a) if a_len is None else a_len
    b_len = len(b) if b_len is None else b_len

    acc = np.zeros(2 * m, dtype=complex)
    cur = _diagonal(a, b, k, a_len, b_len)
    if cur is not None:
        acc += cur
    carry = _diagonal(a, b, k - 1, a_len, b_len)
    if carry is not None:
        acc += ctx.half_shift(2 * m) * carry
    return inverse_transform(ctx, Transform(acc))[:m]


def delta(f) -> np.ndarray:
    """Euler derivative ``x f'(x)``: coefficient j is scaled by j."""
    f = np.asarray(f, dtype=complex)
    return f * np.arange(len(f))


def delta_k_apply(block, k: int) -> np.ndarray:
    """``X^-k delta(X^k b)``: coefficient j scaled by ``k*m + j``."""
    block = np.asarray(block, dtype=complex)
    m = len(block)
    return block * (k * m + np.arange(m))


def delta_k_inverse(block, k: int) -> np.ndarray:
    """Inverse of :func:`delta_k_apply`; the constant slot is 0 when ``k == 0``."""
    block = np.asarray(block, dtype=complex)
    m = len(block)
    scale = (k * m + np.arange(m)).astype(float)
    if k == 0:
        if m and abs(block[0]) > _ZERO_TOL:
            raise NonIntegrableConstantError(
                f"cannot invert delta_0 on a block with constant term {block[0]}"
            )
        scale[0] = np.inf
    return block / scale
