"""Vectorized (4 x 32-bit) Montgomery multiplication and its building blocks."""

from .lanes import VecU32x4, VecU64x2
from .montgomery import (
    GatherStrategy,
    UnsupportedStrategyError,
    check_strategy,
    gather_hi_lo,
    gather_hi_lo_array,
    mont_mul4,
    mont_mul4_array,
    mont_mul4_trace,
    mont_mul_batch,
    reduce_2p_to_p,
    widen_mul_even_odd,
)

__all__ = [
    "VecU32x4",
    "VecU64x2",
    "GatherStrategy",
    "UnsupportedStrategyError",
    "check_strategy",
    "gather_hi_lo",
    "gather_hi_lo_array",
    "mont_mul4",
    "mont_mul4_array",
    "mont_mul4_trace",
    "mont_mul_batch",
    "reduce_2p_to_p",
    "widen_mul_even_odd",
]
