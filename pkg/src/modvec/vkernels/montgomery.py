"""Four-lane Montgomery multiplication built from 128-bit integer intrinsics.

The dataflow mixes 4-way steps (on 32-bit lanes) with 2-way steps (where the
full 64-bit intermediate products are needed).  It is written once against
an intrinsic "backend" namespace: :mod:`.lanes` for the pure-Python
reference, :mod:`.npsimd` for batches of registers held in numpy arrays.
"""

from __future__ import annotations

import enum
from typing import NamedTuple, Sequence

import numpy as np

from ..modarith import ModParams, mont_mul
from . import lanes, npsimd
from .lanes import VecU32x4, VecU64x2

BIAS = 0x80000000


class GatherStrategy(enum.Enum):
    """How the high/low halves of four 64-bit products are put back in order.

    Member order is the tie-break order used when costs are equal.
    """

    FLOAT_SHUFFLE_CAST = "float-shuffle-cast"
    SHUFFLE_UNPACK = "shuffle-unpack"
    BLEND_AVX2 = "blend"

    @classmethod
    def parse(cls, text: str) -> "GatherStrategy":
        key = text.strip().lower().replace("_", "-")
        aliases = {"blend-avx2": "blend", "float": "float-shuffle-cast", "unpack": "shuffle-unpack"}
        key = aliases.get(key, key)
        for s in cls:
            if s.value == key:
                return s
        raise ValueError(f"unknown gather strategy {text!r}; choose from {[s.value for s in cls]}")

    @property
    def needs_blend(self) -> bool:
        return self is GatherStrategy.BLEND_AVX2


class UnsupportedStrategyError(ValueError):
    pass


# Shuffle/blend control bytes.
SHUF_EVEN_ODD = 0x88   # (2,0,2,0): lanes 0,2 of a then of b
SHUF_ODD_ODD = 0xDD    # (3,1,3,1)
SHUF_RESTORE = 0xD8    # (3,1,2,0): [x0,x2,x1,x3]
SHUF_SWAP_PAIRS = 0xB1  # (2,3,0,1): swap halves of each 64-bit lane
BLEND_ODD = 0x0A
BLEND_EVEN = 0x05


def check_strategy(strategy: GatherStrategy, has_blend: bool = True) -> None:
    if strategy.needs_blend and not has_blend:
        raise UnsupportedStrategyError(
            f"gather strategy {strategy.value!r} needs an integer blend instruction the target lacks"
        )


def _gather(ops, T20, T31, strategy: GatherStrategy):
    if strategy is GatherStrategy.FLOAT_SHUFFLE_CAST:
        lo = ops.shuffle_ps(T20, T31, SHUF_EVEN_ODD)
        hi = ops.shuffle_ps(T20, T31, SHUF_ODD_ODD)
        return ops.shuffle_epi32(hi, SHUF_RESTORE), ops.shuffle_epi32(lo, SHUF_RESTORE)
    if strategy is GatherStrategy.SHUFFLE_UNPACK:
        s20 = ops.shuffle_epi32(T20, SHUF_RESTORE)
        s31 = ops.shuffle_epi32(T31, SHUF_RESTORE)
        return ops.unpackhi_epi32(s20, s31), ops.unpacklo_epi32(s20, s31)
    if strategy is GatherStrategy.BLEND_AVX2:
        f20 = ops.shuffle_epi32(T20, SHUF_SWAP_PAIRS)
        hi = ops.blend_epi32(f20, T31, BLEND_ODD)
        lo = ops.blend_epi32(f20, T31, BLEND_EVEN)
        return hi, ops.shuffle_epi32(lo, SHUF_SWAP_PAIRS)
    raise TypeError(f"not a GatherStrategy: {strategy!r}")


def _reduce(ops, V, P: int):
    over = ops.cmpgt_epi32(ops.sub_epi32(V, ops.set1_epi32(BIAS)), ops.set1_epi32((P - 1 - BIAS) & 0xFFFFFFFF))
    return ops.sub_epi32(V, ops.and_si128(over, ops.set1_epi32(P)))


class Mont4Trace(NamedTuple):
    result: object
    T: tuple       # (T20, T31)
    m: object
    S: tuple       # (T20 + m*P, T31 + m*P) as 64-bit lanes
    t_presub: object


def _mont4(ops, A, B, params: ModParams, strategy: GatherStrategy) -> Mont4Trace:
    if params.l > 32:
        raise ValueError("the 4x32 kernel needs l <= 32")
    Pv = ops.set1_epi32(params.P)
    # (1) two 2-way widening multiplies
    T20 = ops.mul_epu32(A, B)
    T31 = ops.mul_epu32(ops.srli_si128(A, 4), ops.srli_si128(B, 4))
    # (2) low halves of T, in order
    _, Tl = _gather(ops, T20, T31, strategy)
    # (3) short product: only the low word of (T mod R) * P' is needed
    m = ops.and_si128(ops.mullo_epi32(Tl, ops.set1_epi32(params.Pprime)), ops.set1_epi32(params.R - 1))
    # (4) + (5) 2-way m*P and 64-bit add, carries cross the 32-bit halves
    S20 = ops.add_epi64(T20, ops.mul_epu32(m, Pv))
    S31 = ops.add_epi64(T31, ops.mul_epu32(ops.srli_si128(m, 4), Pv))
    # (6) + (7) gather again, divide by R one half at a time
    hi, lo = _gather(ops, S20, S31, strategy)
    t = ops.add_epi32(ops.slli_epi64(hi, 32 - params.l), ops.srli_epi64(lo, params.l))
    # (8)
    return Mont4Trace(_reduce(ops, t, params.P), (T20, T31), m, (S20, S31), t)


# -- pure-Python reference ---------------------------------------------------

def widen_mul_even_odd(A: VecU32x4, B: VecU32x4) -> tuple[VecU64x2, VecU64x2]:
    A, B = VecU32x4(A), VecU32x4(B)
    T20 = lanes.mul_epu32(A, B)
    T31 = lanes.mul_epu32(lanes.srli_si128(A, 4), lanes.srli_si128(B, 4))
    return T20, T31


def gather_hi_lo(
    T20: VecU64x2, T31: VecU64x2, strategy: GatherStrategy, has_blend: bool = True
) -> tuple[VecU32x4, VecU32x4]:
    check_strategy(strategy, has_blend)
    hi, lo = _gather(lanes, VecU64x2(T20), VecU64x2(T31), strategy)
    return lanes._u32(hi), lanes._u32(lo)


def reduce_2p_to_p(V: VecU32x4, P: int) -> VecU32x4:
    return _reduce(lanes, VecU32x4(V), P)


def mont_mul4_trace(Abar, Bbar, params: ModParams, strategy: GatherStrategy, has_blend: bool = True) -> Mont4Trace:
    check_strategy(strategy, has_blend)
    return _mont4(lanes, VecU32x4(Abar), VecU32x4(Bbar), params, strategy)


def mont_mul4(Abar, Bbar, params: ModParams, strategy: GatherStrategy, has_blend: bool = True) -> VecU32x4:
    return lanes._u32(mont_mul4_trace(Abar, Bbar, params, strategy, has_blend).result)


# -- numpy batches -----------------------------------------------------------

def mont_mul4_array(Abar, Bbar, params: ModParams, strategy: GatherStrategy, has_blend: bool = True) -> np.ndarray:
    """Apply the kernel to every register in an ``(..., 4)`` array."""
    check_strategy(strategy, has_blend)
    return _mont4(npsimd, npsimd.asreg(Abar), npsimd.asreg(Bbar), params, strategy).result


def gather_hi_lo_array(T20, T31, strategy: GatherStrategy, has_blend: bool = True):
    """Batched :func:`gather_hi_lo` over ``(..., 2)`` uint64 arrays of products."""
    check_strategy(strategy, has_blend)
    hi, lo = _gather(npsimd, npsimd.from_u64x2(T20), npsimd.from_u64x2(T31), strategy)
    return hi, lo


def mont_mul_batch(
    Abar: Sequence[int],
    Bbar: Sequence[int],
    params: ModParams,
    strategy: GatherStrategy,
    has_blend: bool = True,
    backend: str = "numpy",
) -> np.ndarray:
    """Element-wise Montgomery product; the ``len % 4`` tail goes through scalar ``mont_mul``.

    ``backend`` picks ``"numpy"`` (whole batch at once) or ``"emulated"``
    (one register at a time through the reference lanes).
    """
    a = np.asarray(Abar, dtype=np.uint64)
    b = np.asarray(Bbar, dtype=np.uint64)
    if a.shape != b.shape or a.ndim != 1:
        raise ValueError(f"operand arrays must be 1-D and equal length, got {a.shape} and {b.shape}")
    if a.size and (int(a.max()) >= params.P or int(b.max()) >= params.P):
        raise ValueError("operands must lie in [0, P)")
    check_strategy(strategy, has_blend)
    n = a.size
    body = n - n % 4
    out = np.empty(n, dtype=np.uint32)
    if body:
        A = a[:body].astype(np.uint32).reshape(-1, 4)
        B = b[:body].astype(np.uint32).reshape(-1, 4)
        if backend == "numpy":
            out[:body] = mont_mul4_array(A, B, params, strategy).reshape(-1)
        elif backend == "emulated":
            for g in range(A.shape[0]):
                out[4 * g : 4 * g + 4] = mont_mul4(A[g], B[g], params, strategy)
        else:
            raise ValueError(f"unknown backend {backend!r}")
    for i in range(body, n):
        out[i] = mont_mul(int(a[i]), int(b[i]), params)
    return out
