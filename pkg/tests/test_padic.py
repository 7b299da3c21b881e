from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pgamma import (
    PadicInt,
    PrecisionError,
    PrimeContext,
    abs_p,
    digits,
    from_integer,
    from_rational,
    h_ell,
    is_prime,
    residue_rep,
    residue_rep_prime,
    unit_inverse,
    unit_pow,
    valuation,
    vp_int,
)

PRIMES = st.sampled_from([2, 3, 5, 7])
PREC = st.integers(min_value=1, max_value=15)
INTS = st.integers(min_value=-(10**30), max_value=10**30)


def test_is_prime():
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


def test_context_validation():
    with pytest.raises(ValueError):
        PrimeContext(4, 1)
    with pytest.raises(ValueError):
        PrimeContext(3, 0)
    with pytest.raises(ValueError):
        PrimeContext(3, 1, 0)
    assert PrimeContext(3, 2).q == 9


def test_vp_int():
    assert vp_int(0, 3) is None
    assert vp_int(-48, 2) == 4
    assert vp_int(3**200 * 7, 3) == 200
    assert vp_int(5, 3) == 0


def test_from_rational_and_inverse():
    half = from_rational(1, 2, 3, 3)
    assert half.residue == 14  # 2 * 14 = 28 = 1 mod 27
    assert (half * 2).residue == 1
    with pytest.raises(ValueError):
        from_rational(1, 3, 3, 4)
    with pytest.raises(ValueError):
        unit_inverse(from_integer(3, 3, 4))


def test_digits_and_strings():
    x = from_integer(-1, 3, 4)
    assert digits(x).digits == (2, 2, 2, 2)
    assert str(x) == "80 + O(3^4)"
    assert x.digit_string() == "2,2,2,2 + O(3^4)"


def test_valuation_of_zero_is_inexact():
    assert valuation(from_integer(0, 5, 4)) == (4, False)
    assert abs_p(from_integer(50, 5, 4)) == (Fraction(1, 25), True)


def test_residue_rep_example():
    ctx = PrimeContext(3, 2)
    x = from_integer(18, 3, 5)
    assert residue_rep(x, ctx) == 9
    assert residue_rep_prime(x, ctx) == PadicInt(3, 3, 1)


def test_h_ell_precision():
    x = from_integer(3**5 + 7, 3, 6)
    assert h_ell(x, 2) == PadicInt(3, 4, 27)
    with pytest.raises(PrecisionError):
        h_ell(x, 6)


def test_congruent_precision_guard():
    a, b = from_integer(1, 3, 2), from_integer(10, 3, 5)
    assert a.congruent(b)
    with pytest.raises(PrecisionError):
        a.congruent(b, 3)


def test_unit_pow_requirements():
    with pytest.raises(ValueError):
        unit_pow(from_integer(2, 3, 4), 3)
    with pytest.raises(ValueError):
        unit_pow(from_integer(3, 2, 4), 3)
    assert unit_pow(from_integer(4, 3, 5), 2).residue == 16


@settings(max_examples=200, deadline=None)
@given(PRIMES, PREC, INTS, INTS, INTS)
def test_ring_laws(p, n, a, b, c):
    x, y, z = (from_integer(v, p, n) for v in (a, b, c))
    assert x + y == y + x
    assert x * y == y * x
    assert (x + y) + z == x + (y + z)
    assert x * (y + z) == x * y + x * z
    assert x - x == from_integer(0, p, n)
    assert (x * y).residue == (a * b) % p**n


@settings(max_examples=200, deadline=None)
@given(PRIMES, PREC, st.integers(min_value=0, max_value=10**30))
def test_digit_reconstruction_and_shift(p, n, a):
    x = from_integer(a, p, n)
    ds = digits(x)
    assert ds.value() == x.residue
    assert all(0 <= d < p for d in ds.digits)
    for ell in range(n):
        shifted = h_ell(x, ell)
        assert shifted.precision == n - ell
        assert digits(shifted).digits == ds.digits[ell:]
        # x = (x mod p^ell) + p^ell h_ell(x)
        assert (x.residue % p**ell + p**ell * shifted.residue) % p**n == x.residue


@settings(max_examples=200, deadline=None)
@given(PRIMES, st.integers(min_value=1, max_value=10**20), st.integers(min_value=1, max_value=10**20))
def test_valuation_additive(p, a, b):
    n = 200  # v_2 of each factor is at most 66, so the product is never 0 + O(p^n)
    x, y = from_integer(a, p, n), from_integer(b, p, n)
    assert valuation(x * y).v == valuation(x).v + valuation(y).v
    assert valuation(x + y).v >= min(valuation(x).v, valuation(y).v)


@settings(max_examples=200, deadline=None)
@given(PRIMES, st.integers(min_value=1, max_value=3), st.integers(min_value=0, max_value=6), INTS)
def test_residue_rep_range(p, t, extra, a):
    ctx = PrimeContext(p, t)
    n = t + 1 + extra
    x = from_integer(a, p, n)
    r = residue_rep(x, ctx)
    assert 1 <= r <= ctx.q
    rp = residue_rep_prime(x, ctx)
    assert rp.precision == n - t
    assert (r + ctx.q * rp.residue - a) % p**n == 0


@settings(max_examples=100, deadline=None)
@given(PRIMES, PREC, st.integers(min_value=-(10**9), max_value=10**9), st.integers(min_value=1, max_value=10**9))
def test_rational_embedding(p, n, a, b):
    if b % p == 0:
        return
    x = from_rational(a, b, p, n)
    assert (x * b).residue == a % p**n
