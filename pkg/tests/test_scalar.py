import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from padic_twoterm.core import (
    PadicScalar,
    PrecisionError,
    PrecisionPolicy,
    PrimeMismatchError,
    parse_scalar,
    valuation_int,
    valuation_rational,
)

PRIMES = [3, 5, 7, 11, 13]
DIGITS = 30

nonzero_ints = st.integers(min_value=-10 ** 30, max_value=10 ** 30).filter(bool)


def s(p, n, d=DIGITS):
    return PadicScalar.from_rational(p, n, d)


def test_small_sum():
    assert str(s(5, 2, 10) + s(5, 3, 10)) == "5^1 * 1 :: 9"


def test_valuations():
    assert valuation_int(250, 5) == 3
    assert valuation_rational(Fraction(7, 50), 5) == -2
    with pytest.raises(ValueError):
        valuation_int(0, 5)


@pytest.mark.parametrize("p", PRIMES)
@given(a=nonzero_ints, b=nonzero_ints, c=nonzero_ints)
def test_ring_axioms(p, a, b, c):
    x, y, z = s(p, a), s(p, b), s(p, c)
    assert (x + y).agrees_with(y + x)
    assert (x * y).agrees_with(y * x)
    assert ((x + y) + z).agrees_with(x + (y + z))
    assert ((x * y) * z).agrees_with(x * (y * z))
    assert (x * (y + z)).agrees_with(x * y + x * z)
    assert (x - x).is_zero


@pytest.mark.parametrize("p", PRIMES)
@given(a=nonzero_ints, b=nonzero_ints)
def test_matches_rational_arithmetic(p, a, b):
    q = Fraction(a, b)
    got = s(p, a) / s(p, b)
    assert got.agrees_with(s(p, q, DIGITS + 40))
    assert got.valuation == valuation_rational(q, p)


@pytest.mark.parametrize("p", PRIMES)
@given(a=nonzero_ints, b=nonzero_ints)
def test_precision_soundness(p, a, b):
    # every digit trusted at low precision survives at higher precision
    lo = (s(p, a) * s(p, b) + s(p, a)) / s(p, b)
    hi = (s(p, a, DIGITS + 20) * s(p, b, DIGITS + 20) + s(p, a, DIGITS + 20)) / s(p, b, DIGITS + 20)
    assert lo.trusted <= hi.trusted
    assert lo.agrees_with(hi)


def test_cancellation_loses_digits():
    p = 5
    x = s(p, 1 + 5 ** 10, 20) - s(p, 1, 20)
    assert x.valuation == 10
    assert x.absprec == 20


def test_zero_at_precision():
    z = s(7, 5, 10) - s(7, 5, 10)
    assert z.is_zero and not z.is_exact_zero
    assert z.floor == 10
    assert str(z) == "7^10 * 0 :: 0"
    assert str(PadicScalar.exact_zero(7)) == "0"
    with pytest.raises(ZeroDivisionError):
        s(7, 1) / PadicScalar.exact_zero(7)
    with pytest.raises((PrecisionError, ZeroDivisionError)):
        s(7, 1) / z


def test_prime_mismatch():
    with pytest.raises(PrimeMismatchError):
        s(5, 1) + s(7, 1)


@pytest.mark.parametrize("p", PRIMES)
@given(n=nonzero_ints)
def test_text_round_trip(p, n):
    x = s(p, n)
    assert parse_scalar(str(x)) == x
    assert parse_scalar(str(x), p) == x


def test_parse_errors():
    with pytest.raises(ValueError):
        parse_scalar("5^1 * x :: 3")
    with pytest.raises(ValueError):
        parse_scalar("0")
    with pytest.raises(PrimeMismatchError):
        parse_scalar("5^1 * 3 :: 3", 7)


def test_power_and_inverse():
    x = s(5, 3, 40)
    assert (x ** 5 * x ** -5).agrees_with(s(5, 1, 40))
    assert (x ** 0).agrees_with(s(5, 1, 40))


def test_policy_defaults():
    pol = PrecisionPolicy.for_prime(5, 100)
    assert pol.guard == 10 + math.ceil(100 / 4)
    assert pol.working == 100 + pol.guard
    with pytest.raises(ValueError):
        PrecisionPolicy.for_prime(5, 100, guard=1)
