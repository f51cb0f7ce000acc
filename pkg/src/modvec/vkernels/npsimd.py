"""numpy model of the same intrinsics, vectorized over many registers at once.

A register batch is a ``uint32`` array whose last axis holds the four lanes.
Results are always returned in that 4x32 layout; 64-bit views are built with
explicit shifts so the code does not depend on host byte order.
"""

from __future__ import annotations

import numpy as np

U32 = np.uint32
U64 = np.uint64
_SH32 = np.uint64(32)
_LO32 = np.uint64(0xFFFFFFFF)


def asreg(x) -> np.ndarray:
    a = np.asarray(x)
    if a.shape[-1:] != (4,):
        raise ValueError(f"register batches need a trailing axis of 4 lanes, got shape {a.shape}")
    return a.astype(U32, copy=False)


def to_u64x2(a: np.ndarray) -> np.ndarray:
    a = a.astype(U64)
    return a[..., 0::2] | (a[..., 1::2] << _SH32)


def from_u64x2(w: np.ndarray) -> np.ndarray:
    out = np.empty(w.shape[:-1] + (4,), dtype=U32)
    out[..., 0::2] = (w & _LO32).astype(U32)
    out[..., 1::2] = (w >> _SH32).astype(U32)
    return out


def set1_epi32(x: int, shape=()) -> np.ndarray:
    return np.full(tuple(shape) + (4,), x & 0xFFFFFFFF, dtype=U32)


def mul_epu32(a, b) -> np.ndarray:
    a, b = asreg(a), asreg(b)
    return from_u64x2(a[..., 0::2].astype(U64) * b[..., 0::2].astype(U64))


def mullo_epi32(a, b) -> np.ndarray:
    return asreg(a) * asreg(b)  # uint32 multiply wraps


def shuffle_epi32(a, imm: int) -> np.ndarray:
    idx = [(imm >> (2 * i)) & 3 for i in range(4)]
    return asreg(a)[..., idx]


def shuffle_ps(a, b, imm: int) -> np.ndarray:
    a, b = asreg(a), asreg(b)
    return np.stack(
        [a[..., imm & 3], a[..., (imm >> 2) & 3], b[..., (imm >> 4) & 3], b[..., (imm >> 6) & 3]],
        axis=-1,
    )


def unpacklo_epi32(a, b) -> np.ndarray:
    a, b = asreg(a), asreg(b)
    return np.stack([a[..., 0], b[..., 0], a[..., 1], b[..., 1]], axis=-1)


def unpackhi_epi32(a, b) -> np.ndarray:
    a, b = asreg(a), asreg(b)
    return np.stack([a[..., 2], b[..., 2], a[..., 3], b[..., 3]], axis=-1)


def blend_epi32(a, b, imm: int) -> np.ndarray:
    a, b = asreg(a), asreg(b)
    sel = np.array([(imm >> i) & 1 for i in range(4)], dtype=bool)
    return np.where(sel, b, a)


def and_si128(a, b) -> np.ndarray:
    return asreg(a) & asreg(b)


def add_epi64(a, b) -> np.ndarray:
    return from_u64x2(to_u64x2(asreg(a)) + to_u64x2(asreg(b)))


def add_epi32(a, b) -> np.ndarray:
    return asreg(a) + asreg(b)


def sub_epi32(a, b) -> np.ndarray:
    return asreg(a) - asreg(b)


def slli_epi64(a, n: int) -> np.ndarray:
    w = to_u64x2(asreg(a))
    return from_u64x2(w << U64(n) if n < 64 else np.zeros_like(w))


def srli_epi64(a, n: int) -> np.ndarray:
    w = to_u64x2(asreg(a))
    return from_u64x2(w >> U64(n) if n < 64 else np.zeros_like(w))


def srli_si128(a, nbytes: int) -> np.ndarray:
    if nbytes % 4:
        raise NotImplementedError("only whole-lane byte shifts are modelled")
    a = asreg(a)
    k = min(nbytes // 4, 4)
    out = np.zeros_like(a)
    out[..., : 4 - k] = a[..., k:]
    return out


def cmpgt_epi32(a, b) -> np.ndarray:
    gt = asreg(a).view(np.int32) > asreg(b).view(np.int32)
    return np.where(gt, U32(0xFFFFFFFF), U32(0))
