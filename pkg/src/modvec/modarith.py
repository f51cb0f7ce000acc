"""Scalar modular multiplication over word-size primes.

Every routine here works on plain Python ints but keeps to the word widths a
C implementation would use: operands below ``P < 2**31``, products held in
64 bits.  The ``*_trace`` variants expose the intermediate quantities the
algorithm bounds are stated in, so tests can assert them on every call.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .primes import fourier_form, is_prime

MAX_P = 1 << 31
MASK32 = (1 << 32) - 1
MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class ModParams:
    """Precomputed constants for one prime ``P`` and ``R = 2**l``."""

    P: int
    l: int
    R: int
    Rinv: int
    Pprime: int
    R2modP: int
    k_barrett: int
    Pprime_barrett: int
    fourier: tuple[int, int] | None = None

    @property
    def mask(self) -> int:
        return self.R - 1

    def check(self) -> None:
        """Raise AssertionError if any invariant is broken."""
        P, R = self.P, self.R
        assert R == 1 << self.l and R > P and P % 2 == 1
        assert (R * self.Rinv - P * self.Pprime) & MASK64 == 1
        assert R * self.Rinv - P * self.Pprime == 1
        assert 0 < self.Rinv < P and 0 < self.Pprime < R
        assert self.R2modP == R * R % P
        two2k = 1 << (2 * self.k_barrett)
        assert self.Pprime_barrett * P <= two2k < (self.Pprime_barrett + 1) * P
        if self.fourier is not None:
            c, n = self.fourier
            assert c % 2 == 1 and c * (1 << n) + 1 == P and 2 * n >= self.l


def egcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, x, y)`` with ``a*x + b*y == g == gcd(a, b)``."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def precompute_params(P: int, l: int | None = None) -> ModParams:
    """Build :class:`ModParams` for prime ``P`` with ``R = 2**l``.

    ``l`` defaults to the bit length of ``P``, the smallest admissible value.
    """
    if P % 2 == 0:
        raise ValueError(f"P must be odd, got {P}")
    if P <= 3:
        raise ValueError(f"P must exceed 3, got {P}")
    if P >= MAX_P:
        raise ValueError(f"P must be below 2**31, got {P}")
    if not is_prime(P):
        raise ValueError(f"P = {P} is not prime")
    if l is None:
        l = P.bit_length()
    if not 1 <= l <= 32:
        raise ValueError(f"l must lie in [1, 32], got {l}")
    R = 1 << l
    if R <= P:
        raise ValueError(f"2**l = {R} must exceed P = {P}")

    g, x, _ = egcd(R % P, P)
    assert g == 1
    Rinv = x % P
    Pprime, rem = divmod(R * Rinv - 1, P)
    assert rem == 0

    k = (P - 1).bit_length()  # ceil(log2 P)
    params = ModParams(
        P=P,
        l=l,
        R=R,
        Rinv=Rinv,
        Pprime=Pprime,
        R2modP=R * R % P,
        k_barrett=k,
        Pprime_barrett=(1 << (2 * k)) // P,
        fourier=fourier_form(P, l),
    )
    params.check()
    return params


def mod_mul_naive(a: int, b: int, P: int) -> int:
    return (a * b) % P


def mod_add(a: int, b: int, P: int) -> int:
    s = a + b
    return s - P if s >= P else s


def mod_sub(a: int, b: int, P: int) -> int:
    d = a - b
    return d + P if d < 0 else d


class BarrettTrace(NamedTuple):
    result: int
    loops: int
    t_initial: int


def barrett_mul_trace(a: int, b: int, params: ModParams) -> BarrettTrace:
    P, k = params.P, params.k_barrett
    ab = a * b
    m = ab >> k
    q = (m * params.Pprime_barrett) >> k
    t = ab - q * P
    t0 = t
    loops = 0
    while t >= P:
        t -= P
        loops += 1
    return BarrettTrace(t, loops, t0)


def barrett_mul(a: int, b: int, params: ModParams) -> int:
    P, k = params.P, params.k_barrett
    ab = a * b
    t = ab - ((((ab >> k) * params.Pprime_barrett) >> k) * P)
    while t >= P:
        t -= P
    return t


class RedcTrace(NamedTuple):
    result: int
    m: int
    t_presub: int
    low_bits: int  # bits of T + m*P discarded by the division by R


def redc_trace(T: int, params: ModParams) -> RedcTrace:
    mask = params.mask
    m = ((T & mask) * params.Pprime) & mask
    u = T + m * params.P
    t = u >> params.l
    res = t - params.P if t >= params.P else t
    return RedcTrace(res, m, t, u & mask)


def redc(T: int, params: ModParams) -> int:
    """Return ``T * R**-1 mod P`` for ``0 <= T < R*P``."""
    mask = params.mask
    m = ((T & mask) * params.Pprime) & mask
    t = (T + m * params.P) >> params.l
    return t - params.P if t >= params.P else t


def mont_mul(abar: int, bbar: int, params: ModParams) -> int:
    return redc(abar * bbar, params)


def to_mont(x: int, params: ModParams) -> int:
    return redc(x * params.R2modP, params)


def from_mont(xbar: int, params: ModParams) -> int:
    return redc(xbar, params)


class FourierTrace(NamedTuple):
    result: int
    t_signed: int
    r3: int


def _require_fourier(params: ModParams) -> tuple[int, int]:
    if params.fourier is None:
        raise ValueError(f"P = {params.P} has no Fourier form usable with l = {params.l}")
    return params.fourier


def fourier_redc_trace(abar: int, bbar: int, params: ModParams) -> FourierTrace:
    c, n = _require_fourier(params)
    l, mask, P = params.l, params.mask, params.P
    T = abar * bbar
    q1, r1 = T >> l, T & mask
    # c*2**n*r is computed as (c*r) << n
    u = (c * r1) << n
    q2, r2 = u >> l, u & mask
    v = (c * r2) << n
    q3, r3 = v >> l, v & mask
    t = q1 - q2 + q3
    t0 = t
    # sign masks come from a 64-bit signed word; see _sign_mask
    t += _sign_mask(t) & P
    t -= P
    t += _sign_mask(t) & P
    return FourierTrace(t, t0, r3)


def _sign_mask(t: int) -> int:
    """All-ones when ``t < 0``, zero otherwise (arithmetic shift of an int64)."""
    return t >> 63


def fourier_redc(abar: int, bbar: int, params: ModParams) -> int:
    """Montgomery product for ``P = c*2**n + 1`` without the ``P'`` multiply."""
    c, n = _require_fourier(params)
    l, mask, P = params.l, params.mask, params.P
    T = abar * bbar
    r1 = T & mask
    u = (c * r1) << n
    t = (T >> l) - (u >> l) + (((c * (u & mask)) << n) >> l)
    t += (t >> 63) & P
    t -= P
    t += (t >> 63) & P
    return t
