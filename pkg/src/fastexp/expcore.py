"""Exponential of a power series to order ``2sm`` from its first block.

Given ``g0 = exp(f) mod x^m`` and ``u = 1/g0 mod x^m``, the first half of
``g = exp(f)`` (blocks ``0..s-1``) is produced block by block from the
ODE ``delta g = g delta f``.  The second half is obtained without ever
transforming its blocks: the logarithmic derivative ``q = delta(g0)/g0``
is extended to ``2s`` blocks by a division-style loop, the residual
``eps`` with ``q = delta f + delta(eps X^s)`` is integrated, and
``exp(f) = g0 (1 - eps X^s) mod X^2s``.

Every length-``2m`` transform is counted; one call costs exactly
``13s - 4`` of them.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .blockseries import (
    BlockSeries,
    block_product,
    cache_transform,
    delta,
    delta_k_inverse,
    join_blocks,
    split_blocks,
)
from .errors import ContractError, NonFiniteError
from .transform import FftContext, Transform, forward_transform, inverse_transform, is_power_of_two

__all__ = [
    "ExpState",
    "algorithm1_exp",
    "init_state",
    "phase1_first_half",
    "phase2_quotient",
    "phase3_correction",
]

_INPUT_TOL = 1e-12
_SEED_TOL = 1e-10


@dataclass
class ExpState:
    s: int
    m: int
    f_blocks: BlockSeries
    df_blocks: BlockSeries
    g_blocks: BlockSeries
    u_block: BlockSeries
    q_blocks: BlockSeries
    eps_blocks: BlockSeries
    ctx: FftContext

    @property
    def length(self) -> int:
        return 2 * self.s * self.m

    def g(self) -> np.ndarray:
        return join_blocks(self.g_blocks)

    def q(self) -> np.ndarray:
        return join_blocks(self.q_blocks)


def _low_product(ctx: FftContext, fa: Transform, fb: Transform, m: int) -> np.ndarray:
    # both factors have degree < m, so the length-2m cyclic product is exact
    return inverse_transform(ctx, Transform(fa.values * fb.values))[:m]


def _check_finite(arr: np.ndarray, where: str) -> None:
    if not np.isfinite(arr).all():
        raise NonFiniteError(f"non-finite coefficients after {where}")


def init_state(ctx: FftContext, s: int, f, g0, u) -> ExpState:
    """Validate inputs and compute the transforms of g0, u and delta(f) blocks 0..s-1."""
    if not isinstance(s, (int, np.integer)) or s < 1:
        raise ContractError(f"s must be a positive integer, got {s!r}")
    g0 = np.asarray(g0, dtype=complex).reshape(-1)
    u = np.asarray(u, dtype=complex).reshape(-1)
    m = len(g0)
    if not is_power_of_two(m) or len(u) != m:
        raise ContractError(f"g0 and u must be blocks of one power-of-two size (got {len(g0)}, {len(u)})")
    f = np.asarray(f, dtype=complex).reshape(-1)
    n = 2 * s * m
    if len(f) > n:
        raise ContractError(f"f has {len(f)} coefficients, more than 2sm = {n}")
    for name, arr in (("f", f), ("g0", g0), ("u", u)):
        if not np.isfinite(arr).all():
            raise ContractError(f"{name} has non-finite coefficients")
    if len(f) and abs(f[0]) >= _INPUT_TOL:
        raise ContractError("constant term must be zero")

    f_blocks = split_blocks(f, m, 2 * s)
    df = delta(join_blocks(f_blocks))
    # g0 * u = 1 and delta(g0) = g0 delta(f) modulo x^m pin down both seeds
    scale = 1.0 + np.abs(g0).max() * max(1.0, np.abs(u).max(), np.abs(df[:m]).max())
    unit = np.convolve(g0, u)[:m]
    unit[0] -= 1.0
    ode = np.convolve(g0, df[:m])[:m] - delta(g0)
    if np.abs(unit).max() > _SEED_TOL * scale:
        raise ContractError("u is not the inverse of g0 modulo x^m")
    if np.abs(ode).max() > _SEED_TOL * scale:
        raise ContractError("g0 is not exp(f) modulo x^m")

    g_blocks = BlockSeries(m, 2 * s)
    g_blocks.set_block(0, g0)
    u_block = BlockSeries(m, 1)
    u_block.set_block(0, u)
    state = ExpState(
        s=s,
        m=m,
        f_blocks=f_blocks,
        df_blocks=split_blocks(df, m, 2 * s),
        g_blocks=g_blocks,
        u_block=u_block,
        q_blocks=BlockSeries(m, 2 * s),
        eps_blocks=BlockSeries(m, s),
        ctx=ctx,
    )
    cache_transform(ctx, state.g_blocks, 0)
    cache_transform(ctx, state.u_block, 0)
    for k in range(s):
        cache_transform(ctx, state.df_blocks, k)
    return state


def phase1_first_half(state: ExpState) -> None:
    """Blocks 1..s-1 of exp(f), each with its transform cached (6 transforms per block)."""
    ctx, m = state.ctx, state.m
    g, df = state.g_blocks, state.df_blocks
    fu = state.u_block.transform(0)
    fg0 = g.transform(0)
    for k in range(1, state.s):
        # block k of delta(g) with the unknown g[k] * delta(f)[0] term left out
        psi = block_product(ctx, g, df, k, a_len=k, b_len=k + 1)
        fpsi = forward_transform(ctx, psi, 2 * m)
        phi = _low_product(ctx, fu, fpsi, m)
        fw = forward_transform(ctx, delta_k_inverse(phi, k), 2 * m)
        g.set_block(k, _low_product(ctx, fg0, fw, m))
        cache_transform(ctx, g, k)
    _check_finite(g.coeffs[: state.s], "first half")


def phase2_quotient(state: ExpState) -> None:
    """Extend q = delta(g0)/g0 to 2s blocks (4 transforms per new block)."""
    ctx, m, s = state.ctx, state.m, state.s
    q, g = state.q_blocks, state.g_blocks
    for k in range(s):
        q.adopt(k, state.df_blocks, k)
    fu = state.u_block.transform(0)
    for k in range(s, 2 * s):
        psi = block_product(ctx, q, g, k, a_len=k, b_len=s)
        fpsi = forward_transform(ctx, psi, 2 * m)
        q.set_block(k, -_low_product(ctx, fu, fpsi, m))
        cache_transform(ctx, q, k)
    _check_finite(q.coeffs, "quotient")


def phase3_correction(state: ExpState) -> None:
    """Blocks s..2s-1 of exp(f) from g0 (1 - eps X^s); their transforms are never taken."""
    ctx, s = state.ctx, state.s
    eps, g = state.eps_blocks, state.g_blocks
    for k in range(s):
        eps.set_block(k, delta_k_inverse(state.q_blocks[k + s], k + s) - state.f_blocks[k + s])
    for k in range(s):
        cache_transform(ctx, eps, k)
    for k in range(s):
        # full range g[0..k]: the g[k] * eps[0] term belongs to block k of g0 * eps
        g.set_block(k + s, -block_product(ctx, g, eps, k, a_len=k + 1, b_len=k + 1))
    _check_finite(g.coeffs, "correction")


def algorithm1_exp(ctx: FftContext, s: int, f, g0, u) -> np.ndarray:
    """``exp(f) mod x^(2sm)`` where ``m = len(g0)``.

    Parameters
    ----------
    ctx : FftContext
        Must support length ``2m``.
    s : int
        Number of blocks in each half of the output.
    f : array_like
        At most ``2sm`` coefficients, ``f[0] == 0``.
    g0, u : array_like
        ``exp(f) mod x^m`` and its inverse ``mod x^m``, both of length ``m``.

    Returns
    -------
    numpy.ndarray
        The ``2sm`` coefficients of ``exp(f)``.
    """
    state = init_state(ctx, s, f, g0, u)
    phase1_first_half(state)
    phase2_quotient(state)
    phase3_correction(state)
    return state.g()
