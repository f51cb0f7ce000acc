import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from modvec import modarith as ma
from modvec.modarith import precompute_params

PRIMES = [(17, 5), (97, 7), (257, 9), (257, 16), (1000003, 20), (469762049, 29), (2013265921, 31), (2013265921, 32)]


def brute_inverse(x, P):
    return next(y for y in range(1, P) if x * y % P == 1)


def test_worked_values_p17(p17):
    # recomputed by brute force rather than copied
    assert p17.Rinv == brute_inverse(32, 17) == 8
    assert p17.Pprime == (32 * 8 - 1) // 17 == 15
    assert p17.R2modP == 32 * 32 % 17
    assert ma.redc(15, p17) == 15 * 8 % 17 == 1
    assert ma.mont_mul(11, 7, p17) == 11 * 7 * 8 % 17 == 4


def test_worked_values_p97(p97):
    assert p97.Rinv == brute_inverse(128, 97) == 72
    assert p97.Pprime == (128 * 72 - 1) // 97 == 95
    assert p97.fourier == (3, 5)
    assert ma.fourier_redc(10, 20, p97) == 10 * 20 * 72 % 97 == 44
    assert ma.fourier_redc(1, 1, p97) == 72


def test_barrett_worked_value(p17):
    tr = ma.barrett_mul_trace(16, 13, p17)
    assert tr.result == 16 * 13 % 17 == 4
    assert tr.loops == 1
    assert p17.k_barrett == 5 and p17.Pprime_barrett == 1024 // 17


@pytest.mark.parametrize("P,l", PRIMES)
def test_params_invariants(P, l):
    p = precompute_params(P, l)
    p.check()
    assert p.R * p.Rinv % P == 1


def test_default_l_is_bit_length():
    assert precompute_params(97).l == 7
    assert precompute_params(2013265921).l == 31


@pytest.mark.parametrize(
    "P,l",
    [(16, None), (3, None), (1, None), (91, None), (2**31 + 11, None), (97, 6), (97, 33), (97, 0), (17, 4)],
)
def test_precompute_rejects(P, l):
    with pytest.raises(ValueError):
        precompute_params(P, l)


def test_egcd():
    g, x, y = ma.egcd(240, 46)
    assert g == 2 and 240 * x + 46 * y == 2


def test_add_sub():
    assert ma.mod_add(16, 5, 17) == 4
    assert ma.mod_sub(3, 5, 17) == 15
    assert ma.mod_mul_naive(16, 16, 17) == 1


def test_fourier_needs_form():
    p = precompute_params(1000003, 20)
    assert p.fourier is None
    with pytest.raises(ValueError):
        ma.fourier_redc(1, 1, p)


def test_fourier_large_t_uses_wide_sign(baby_bear):
    # t leaves the 32-bit signed range for this prime; the result must still be right
    P = baby_bear.P
    a, b = P - 1, P - 2
    tr = ma.fourier_redc_trace(a, b, baby_bear)
    assert tr.result == a * b * baby_bear.Rinv % P
    assert tr.r3 == 0


params_st = st.sampled_from([precompute_params(P, l) for P, l in PRIMES])


@settings(max_examples=300, deadline=None)
@given(params_st, st.data())
def test_all_routes_agree(p, data):
    a = data.draw(st.integers(0, p.P - 1))
    b = data.draw(st.integers(0, p.P - 1))
    want = a * b % p.P
    bt = ma.barrett_mul_trace(a, b, p)
    assert bt.result == want and bt.loops <= 3 and bt.t_initial < 4 * p.P
    abar, bbar = ma.to_mont(a, p), ma.to_mont(b, p)
    assert ma.from_mont(ma.mont_mul(abar, bbar, p), p) == want
    rt = ma.redc_trace(abar * bbar, p)
    assert rt.t_presub < 2 * p.P and rt.low_bits == 0
    if p.fourier is not None:
        ft = ma.fourier_redc_trace(abar, bbar, p)
        assert ft.result == ma.mont_mul(abar, bbar, p)
        assert -(p.P - 1) <= ft.t_signed <= 2 * (p.P - 1) and ft.r3 == 0


@settings(max_examples=200, deadline=None)
@given(params_st, st.data())
def test_mont_roundtrip_and_identity(p, data):
    x = data.draw(st.integers(0, p.P - 1))
    assert ma.from_mont(ma.to_mont(x, p), p) == x
    xbar = ma.to_mont(x, p)
    assert ma.mont_mul(ma.to_mont(1, p), xbar, p) == xbar
