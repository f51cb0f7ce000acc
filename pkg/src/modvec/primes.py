"""Primality testing and Fourier-prime discovery for word-size moduli."""

from __future__ import annotations

from typing import NamedTuple

# Deterministic for every n < 2**64 (Sorenson & Webster).
_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_LIMIT = 1 << 64


class FourierPrime(NamedTuple):
    P: int
    c: int
    n: int


def split_pow2(x: int) -> tuple[int, int]:
    """Return ``(c, n)`` with ``x == c * 2**n`` and ``c`` odd."""
    if x <= 0:
        raise ValueError(f"expected a positive integer, got {x}")
    n = (x & -x).bit_length() - 1
    return x >> n, n


def is_prime(n: int) -> bool:
    if n >= _LIMIT:
        raise ValueError("n is too large for the deterministic witness set")
    if n < 2:
        return False
    for p in _WITNESSES:
        if n % p == 0:
            return n == p
    d, r = split_pow2(n - 1)
    for a in _WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def fourier_form(P: int, l: int | None = None) -> tuple[int, int] | None:
    """Return ``(c, n)`` when ``P = c*2**n + 1`` with ``2n >= l``, else None.

    ``l`` defaults to the bit length of ``P``.
    """
    if P < 3 or P % 2 == 0:
        return None
    if l is None:
        l = P.bit_length()
    c, n = split_pow2(P - 1)
    if 2 * n < l:
        return None
    return c, n


def find_fourier_primes(bit_low: int, bit_high: int, count: int | None = None) -> list[FourierPrime]:
    """Primes ``c*2**n + 1`` whose bit length lies in ``[bit_low, bit_high]``.

    Only primes with ``n >= ceil(bitlen(P)/2)`` qualify. Results come back
    ordered by descending ``n``, then ascending ``c``, truncated to ``count``
    entries when given.
    """
    if not 3 <= bit_low <= bit_high <= 31:
        raise ValueError(f"need 3 <= bit_low <= bit_high <= 31, got ({bit_low}, {bit_high})")
    if count is not None and count < 0:
        raise ValueError("count must be non-negative")
    lo, hi = 1 << (bit_low - 1), (1 << bit_high) - 1
    found: list[FourierPrime] = []
    if count == 0:
        return found
    n_min = (bit_low + 1) // 2
    for n in range(bit_high - 1, n_min - 1, -1):
        step = 1 << n
        # smallest odd c with c*2**n + 1 >= lo
        c = max(1, -(-(lo - 1) // step))
        c |= 1
        while True:
            P = c * step + 1
            if P > hi:
                break
            if 2 * n >= P.bit_length() and is_prime(P):
                found.append(FourierPrime(P, c, n))
                if count is not None and len(found) == count:
                    return found
            c += 2
    return found
