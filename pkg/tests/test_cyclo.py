from fractions import Fraction

import pytest

from padic_twoterm.core import CycloElement, PadicScalar, PrecisionError, kernel

PRIMES = [3, 5, 7, 11]
D = 30


def rand_elem(rng, p, d=D):
    return CycloElement.from_ints(p, [rng.randrange(-10 ** 8, 10 ** 8) for _ in range(p - 1)], d)


def agree(x, y):
    return (x - y).is_zero


@pytest.mark.parametrize("p", PRIMES)
def test_norm_of_one_minus_zeta(p):
    one = CycloElement.one(p, D)
    prod = one
    for a in range(1, p):
        prod = prod * (one - CycloElement.zeta(p, D, a))
    assert agree(prod, CycloElement.from_scalar(PadicScalar.from_int(p, p, D)))


@pytest.mark.parametrize("p", PRIMES)
def test_uniformizer_valuation(p):
    x = CycloElement.one(p, D) - CycloElement.zeta(p, D)
    assert x.valuation() == Fraction(1, p - 1)
    assert (x ** (p - 1)).valuation() == 1


@pytest.mark.parametrize("p", PRIMES)
def test_zeta_powers(p):
    z = CycloElement.zeta(p, D)
    assert agree(z ** p, CycloElement.one(p, D))
    assert agree(z.inverse(), CycloElement.zeta(p, D, p - 1))
    assert agree(z.times_zeta(), z * z)


@pytest.mark.parametrize("p", PRIMES)
def test_field_axioms(p, rng):
    for _ in range(10):
        x, y, w = rand_elem(rng, p), rand_elem(rng, p), rand_elem(rng, p)
        assert agree(x * y, y * x)
        assert agree((x * y) * w, x * (y * w))
        assert agree(x * (y + w), x * y + x * w)
        assert agree(x * x.inverse(), CycloElement.one(p, D))


@pytest.mark.parametrize("p", PRIMES)
def test_pi_coordinates_round_trip(p, rng):
    x = rand_elem(rng, p)
    y = CycloElement.from_pi_coordinates(p, x.pi_coordinates())
    assert agree(x, y)


@pytest.mark.parametrize("p", [5, 7])
def test_kernel_matches_tracked_multiplication(p, rng):
    mod = p ** D
    a = [rng.randrange(mod) for _ in range(p - 1)]
    b = [rng.randrange(mod) for _ in range(p - 1)]
    got = CycloElement.from_fixed(p, kernel.mul(a, b, p, mod), D)
    want = CycloElement.from_ints(p, a, D) * CycloElement.from_ints(p, b, D)
    assert agree(got, want)


def test_zero_handling():
    p = 5
    z = CycloElement.one(p, D) - CycloElement.one(p, D)
    assert z.is_zero
    with pytest.raises(PrecisionError):
        z.inverse()
    with pytest.raises(PrecisionError):
        z.valuation()


def test_text_form():
    assert str(CycloElement.zeta(3, 2)) == "[0, 3^0 * 1 :: 2]"
