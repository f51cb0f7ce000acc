"""Portable lane-by-lane emulation of the SSE/AVX2 integer intrinsics we use.

A 128-bit register is a :class:`VecU32x4`; :class:`VecU64x2` is the same bits
viewed as two 64-bit lanes (lane 0 = low 32-bit lanes 0 and 1).  Functions
are named after the intrinsic they model, minus the ``_mm_`` prefix, and
accept either view.
"""

from __future__ import annotations

from typing import Iterable, Union

M32 = 0xFFFFFFFF
M64 = 0xFFFFFFFFFFFFFFFF


class VecU32x4(tuple):
    __slots__ = ()

    def __new__(cls, lanes: Iterable[int]):
        lanes = tuple(int(x) for x in lanes)
        if len(lanes) != 4:
            raise ValueError(f"VecU32x4 needs 4 lanes, got {len(lanes)}")
        for x in lanes:
            if not 0 <= x <= M32:
                raise ValueError(f"lane value {x} does not fit in 32 bits")
        return super().__new__(cls, lanes)

    def __repr__(self) -> str:
        return f"VecU32x4({list(self)})"

    def as_u64x2(self) -> "VecU64x2":
        return VecU64x2((self[0] | self[1] << 32, self[2] | self[3] << 32))


class VecU64x2(tuple):
    __slots__ = ()

    def __new__(cls, lanes: Iterable[int]):
        lanes = tuple(int(x) for x in lanes)
        if len(lanes) != 2:
            raise ValueError(f"VecU64x2 needs 2 lanes, got {len(lanes)}")
        for x in lanes:
            if not 0 <= x <= M64:
                raise ValueError(f"lane value {x} does not fit in 64 bits")
        return super().__new__(cls, lanes)

    def __repr__(self) -> str:
        return f"VecU64x2({list(self)})"

    def as_u32x4(self) -> VecU32x4:
        lo, hi = self
        return VecU32x4((lo & M32, lo >> 32, hi & M32, hi >> 32))


Reg = Union[VecU32x4, VecU64x2]


def _u32(x: Reg) -> VecU32x4:
    return x.as_u32x4() if isinstance(x, VecU64x2) else x


def _u64(x: Reg) -> VecU64x2:
    return x.as_u64x2() if isinstance(x, VecU32x4) else x


def _signed(x: int) -> int:
    return x - (1 << 32) if x & 0x80000000 else x


def set1_epi32(x: int) -> VecU32x4:
    return VecU32x4((x & M32,) * 4)


def mul_epu32(a: Reg, b: Reg) -> VecU64x2:
    a, b = _u32(a), _u32(b)
    return VecU64x2((a[0] * b[0], a[2] * b[2]))


def mullo_epi32(a: Reg, b: Reg) -> VecU32x4:
    a, b = _u32(a), _u32(b)
    return VecU32x4((x * y) & M32 for x, y in zip(a, b))


def shuffle_epi32(a: Reg, imm: int) -> VecU32x4:
    a = _u32(a)
    return VecU32x4(a[(imm >> (2 * i)) & 3] for i in range(4))


def shuffle_ps(a: Reg, b: Reg, imm: int) -> VecU32x4:
    # Bit-level model of _mm_shuffle_ps on integer data cast to float.
    a, b = _u32(a), _u32(b)
    return VecU32x4((a[imm & 3], a[(imm >> 2) & 3], b[(imm >> 4) & 3], b[(imm >> 6) & 3]))


def unpacklo_epi32(a: Reg, b: Reg) -> VecU32x4:
    a, b = _u32(a), _u32(b)
    return VecU32x4((a[0], b[0], a[1], b[1]))


def unpackhi_epi32(a: Reg, b: Reg) -> VecU32x4:
    a, b = _u32(a), _u32(b)
    return VecU32x4((a[2], b[2], a[3], b[3]))


def blend_epi32(a: Reg, b: Reg, imm: int) -> VecU32x4:
    a, b = _u32(a), _u32(b)
    return VecU32x4(b[i] if (imm >> i) & 1 else a[i] for i in range(4))


def and_si128(a: Reg, b: Reg) -> VecU32x4:
    a, b = _u32(a), _u32(b)
    return VecU32x4(x & y for x, y in zip(a, b))


def add_epi64(a: Reg, b: Reg) -> VecU64x2:
    a, b = _u64(a), _u64(b)
    return VecU64x2((x + y) & M64 for x, y in zip(a, b))


def add_epi32(a: Reg, b: Reg) -> VecU32x4:
    a, b = _u32(a), _u32(b)
    return VecU32x4((x + y) & M32 for x, y in zip(a, b))


def sub_epi32(a: Reg, b: Reg) -> VecU32x4:
    a, b = _u32(a), _u32(b)
    return VecU32x4((x - y) & M32 for x, y in zip(a, b))


def slli_epi64(a: Reg, n: int) -> VecU64x2:
    a = _u64(a)
    if n > 63:
        return VecU64x2((0, 0))
    return VecU64x2((x << n) & M64 for x in a)


def srli_epi64(a: Reg, n: int) -> VecU64x2:
    a = _u64(a)
    if n > 63:
        return VecU64x2((0, 0))
    return VecU64x2(x >> n for x in a)


def srli_si128(a: Reg, nbytes: int) -> VecU32x4:
    lo, hi = _u64(a)
    whole = (lo | hi << 64) >> (8 * min(nbytes, 16))
    return VecU64x2((whole & M64, whole >> 64)).as_u32x4()


def cmpgt_epi32(a: Reg, b: Reg) -> VecU32x4:
    a, b = _u32(a), _u32(b)
    return VecU32x4(M32 if _signed(x) > _signed(y) else 0 for x, y in zip(a, b))
