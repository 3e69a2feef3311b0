import pytest
from hypothesis import given, strategies as st

from padic_twoterm.core import DomainError, Jet, PadicScalar, exp_series, jet_exp, jet_log, log_series

D = 40
coeffs = st.lists(st.integers(-10 ** 6, 10 ** 6), min_size=1, max_size=5)


def sc(p, n, d=D):
    return PadicScalar.from_rational(p, n, d)


def poly(c, x):
    acc = None
    for k in reversed(c):
        acc = x * 0 + k if acc is None else acc * x + k
    return acc


@pytest.mark.parametrize("p", [5, 7])
@given(c=coeffs, x0=st.integers(-1000, 1000))
def test_polynomial_derivative(p, c, x0):
    x = Jet.variable(sc(p, x0))
    got = poly(c, x)
    want = sum(k * i * x0 ** (i - 1) for i, k in enumerate(c) if i)
    assert (got.value - sc(p, sum(k * x0 ** i for i, k in enumerate(c)))).is_zero
    assert (got.deriv - sc(p, want)).is_zero


@pytest.mark.parametrize("p", [5, 7])
@given(c=coeffs, x0=st.integers(1, 1000))
def test_quotient_rule(p, c, x0):
    x = Jet.variable(sc(p, x0 * p + 1))
    q = poly(c, x) / x
    back = q * x
    f = poly(c, x)
    assert (back.value - f.value).is_zero
    assert (back.deriv - f.deriv).is_zero


@pytest.mark.parametrize("p", [3, 5, 7])
def test_exp_log_inverse(p):
    for n in (p, 2 * p, p * p * 3, -p):
        x = sc(p, n)
        assert (log_series(exp_series(x)) - x).is_zero
    u = sc(p, 1 + p)
    assert (exp_series(log_series(u)) - u).is_zero


@pytest.mark.parametrize("p", [5, 7])
def test_chain_rule_exp_log(p):
    s = Jet.variable(sc(p, 3))
    u = sc(p, 1 + p)
    # d/ds u**s = log(u) u**s
    j = jet_exp(s * log_series(u))
    assert (j.deriv - j.value * log_series(u)).is_zero
    k = jet_log(Jet(u, sc(p, 1)))
    assert (k.deriv * u - sc(p, 1)).is_zero


def test_domain_errors():
    with pytest.raises(DomainError):
        exp_series(sc(5, 1))
    with pytest.raises(DomainError):
        log_series(sc(5, 2))
