"""Truncated power series exponentials with cached block transforms."""

from .blockseries import (
    BlockSeries,
    block_product,
    cache_transform,
    delta,
    delta_k_apply,
    delta_k_inverse,
    join_blocks,
    split_blocks,
)
from .driver import ExpConfig, ExpPlan, ExpTrace, exp_series, explicit_plan, newton_reciprocal, plan_parameters
from .expcore import ExpState, algorithm1_exp, init_state, phase1_first_half, phase2_quotient, phase3_correction
from .oracle import naive_exp, naive_log, naive_mul, naive_reciprocal
from .transform import CountReport, FftContext, Transform, forward_transform, inverse_transform, snapshot_counts

__version__ = "0.1.0"
