"""Characters mod p, L(0, chi), Bernoulli numbers and the Kubota–Leopoldt L_p.

For an odd character chi the derivative reported here is
d/ds L_p(s, chi*omega) at s = 0; chi*omega is even, which is where the
Kubota–Leopoldt function lives.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .core import DomainError, Jet, PadicError, PadicScalar, PrecisionPolicy, jet_exp, log_series
from .special import principal_unit, teichmuller_int


class OutOfScopeError(ValueError):
    """p = 2 and even prime moduli are not handled."""


def check_odd_prime(p: int) -> None:
    if p == 2:
        raise OutOfScopeError("p = 2 is out of scope: only odd primes are handled")
    if p < 3 or any(p % q == 0 for q in range(2, int(p ** 0.5) + 1)):
        raise ValueError(f"{p} is not an odd prime")


@dataclass(frozen=True)
class DirichletCharacter:
    """chi = omega**exponent, a character of (Z/pZ)^x."""

    prime: int
    exponent: int

    def __post_init__(self):
        if not 0 <= self.exponent <= self.prime - 2:
            raise ValueError(f"exponent must lie in 0..{self.prime - 2}")

    @property
    def is_odd(self) -> bool:
        return self.exponent % 2 == 1

    @property
    def is_trivial(self) -> bool:
        return self.exponent == 0

    def conjugate(self) -> DirichletCharacter:
        return DirichletCharacter(self.prime, (-self.exponent) % (self.prime - 1))

    def times_omega(self) -> DirichletCharacter:
        return DirichletCharacter(self.prime, (self.exponent + 1) % (self.prime - 1))

    def __str__(self) -> str:
        return f"omega^{self.exponent}"


def enumerate_odd_nontrivial(p: int) -> list[DirichletCharacter]:
    check_odd_prime(p)
    return [DirichletCharacter(p, k) for k in range(1, p - 1, 2)]


def chi_value(chi: DirichletCharacter, a: int, policy: PrecisionPolicy) -> PadicScalar:
    p, W = policy.prime, policy.working
    if a % p == 0:
        return PadicScalar.exact_zero(p)
    return PadicScalar(p, 0, pow(teichmuller_int(a, p, W), chi.exponent, p ** W), W)


def L_at_zero(chi: DirichletCharacter, policy: PrecisionPolicy) -> PadicScalar:
    """L(0, chi) = -(1/p) sum_a a chi(a) for nontrivial chi."""
    if chi.is_trivial:
        raise ValueError("L(0, chi) formula needs a nontrivial character")
    p, W = policy.prime, policy.working
    mod = p ** W
    s = sum(a * pow(teichmuller_int(a, p, W), chi.exponent, mod) for a in range(1, p))
    return -PadicScalar.from_residue(p, s, W, shift=-1)


# -- Bernoulli numbers ---------------------------------------------------------

_bernoulli: list[Fraction] = [Fraction(1), Fraction(-1, 2)]
_bernoulli_lock = threading.Lock()


def bernoulli_numbers(J: int) -> list[Fraction]:
    """B_0..B_J from sum_{i=0}^{n} C(n+1, i) B_i = 0, with B_1 = -1/2."""
    with _bernoulli_lock:
        for n in range(len(_bernoulli), J + 1):
            if n % 2:
                _bernoulli.append(Fraction(0))
                continue
            s = Fraction(0)
            for i in range(n):
                if _bernoulli[i]:
                    s += comb(n + 1, i) * _bernoulli[i]
            _bernoulli.append(-s / (n + 1))
        return _bernoulli[:J + 1]


def bernoulli(j: int) -> Fraction:
    if j < 0:
        raise ValueError("index must be nonnegative")
    return bernoulli_numbers(j)[j]


# -- Kubota–Leopoldt -----------------------------------------------------------

class CrossOracleError(PadicError):
    """Two independent routes to the same value disagree."""


def truncation_index(p: int, digits: int) -> int:
    """Smallest J with (j-1)(p-2)/(p-1) >= digits for every j > J.

    Term j of the inner sum is p**j B_j a**-j binom(1-s, j); its valuation
    is at least j - 1 - v_p(j!) >= (j-1)(p-2)/(p-1), derivative included.
    """
    J = 1
    while J * (p - 2) < digits * (p - 1):
        J += 1
    return J


def _as_jet(s, policy: PrecisionPolicy) -> Jet:
    p, W = policy.prime, policy.working
    if isinstance(s, Jet):
        return s
    if not isinstance(s, PadicScalar):
        s = PadicScalar.from_rational(p, Fraction(s), W)
        if s.is_exact_zero:
            s = PadicScalar.exact_zero(p)
    return Jet(s, PadicScalar.from_int(p, 1, W))


def kubota_leopoldt(chi: DirichletCharacter, s, policy: PrecisionPolicy,
                    check: bool = True) -> Jet:
    """L_p(s, chi*omega) and its s-derivative at an expansion point s in Z_p.

    Uses the expansion
        (1/(s-1)) (1/p) sum_{p∤a, a<p} theta(a) <a>^(1-s)
                         sum_j binom(1-s, j) B_j (p/a)^j,     theta = chi*omega.
    At s = 0 the value must equal L(0, chi); ``check`` enforces that.
    """
    p, W = policy.prime, policy.working
    if not chi.is_odd:
        raise ValueError("expects an odd character")
    s = _as_jet(s, policy)
    if not s.value.is_exact_zero and s.value.floor < 0:
        raise DomainError("expansion point must lie in Z_p")
    one = PadicScalar.from_int(p, 1, W)
    one_minus_s = Jet.constant(one) - s
    inner_digits = W + 1
    J = truncation_index(p, inner_digits)
    B = bernoulli_numbers(J)

    binoms = [Jet.constant(one)]
    for j in range(1, J + 1):
        binoms.append(binoms[-1] * (one_minus_s - (j - 1)) / j)

    tail = PadicScalar.zero_at(p, inner_digits)
    theta = chi.times_omega()
    mod = p ** W
    total = None
    for a in range(1, p):
        inv_a = pow(a, -1, mod)
        acc = Jet(tail, tail)
        for j in range(J + 1):
            if B[j] == 0:
                continue
            coeff = PadicScalar.from_rational(p, B[j] * p ** j, W) * PadicScalar(
                p, 0, pow(inv_a, j, mod), W)
            acc = acc + binoms[j] * coeff
        power = jet_exp(one_minus_s * log_series(principal_unit(a, policy)))
        th = PadicScalar(p, 0, pow(teichmuller_int(a, p, W), theta.exponent, mod), W)
        term = power * acc * th
        total = term if total is None else total + term
    result = total / p / (s - one)

    if check and s.value.is_exact_zero:
        ref = L_at_zero(chi, policy)
        d = result.value - ref
        if not (d.is_zero and d.floor >= policy.target - policy.guard):
            raise CrossOracleError(
                f"L_p(0, {theta}) = {result.value} disagrees with L(0, {chi}) = {ref}")
    return result


def lp_derivative_at_zero(chi: DirichletCharacter, policy: PrecisionPolicy) -> PadicScalar:
    """The s-derivative of L_p(s, chi*omega) at s = 0."""
    return kubota_leopoldt(chi, PadicScalar.exact_zero(policy.prime), policy).deriv


def finite_difference_derivative(chi: DirichletCharacter, m: int,
                                 policy: PrecisionPolicy) -> PadicScalar:
    """(L_p(p**m) - L_p(-p**m)) / (2 p**m), an oracle independent of the jets."""
    p, W = policy.prime, policy.working
    h = PadicScalar.from_int(p, p ** m, W)
    plus = kubota_leopoldt(chi, Jet.constant(h), policy).value
    minus = kubota_leopoldt(chi, Jet.constant(-h), policy).value
    return (plus - minus) / (h * 2)


__all__ = [
    "CrossOracleError",
    "DirichletCharacter",
    "L_at_zero",
    "OutOfScopeError",
    "bernoulli",
    "bernoulli_numbers",
    "check_odd_prime",
    "chi_value",
    "enumerate_odd_nontrivial",
    "finite_difference_derivative",
    "kubota_leopoldt",
    "lp_derivative_at_zero",
    "truncation_index",
]
