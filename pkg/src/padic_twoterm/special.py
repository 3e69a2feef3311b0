"""Teichmüller lifts, the branch-fixed logarithm, Morita's Gamma, Gauss sums.

The logarithm is the Iwasawa branch on Q_p(zeta_p)^x: it vanishes on p, on
(p-1)-st roots of unity and on zeta_p.  Every nonzero x reduces to a
principal unit through x -> x**((p-1)**2) / p**((p-1)*m), which kills all
three at once.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .core import CycloElement, PadicError, PadicScalar, PrecisionError, PrecisionPolicy
from .core import kernel

DEFAULT_GAMMA_COST_LIMIT = 10 ** 7


class CostBoundError(PadicError, ValueError):
    """The p**M product for Gamma_p exceeds the configured limit."""


class RationalityError(PadicError):
    """A value that must lie in Q_p has non-scalar mass above its floor."""


# -- Teichmüller ---------------------------------------------------------------

@lru_cache(maxsize=None)
def teichmuller_int(u: int, p: int, digits: int) -> int:
    """omega(u) mod p**digits by iterating x -> x**p to its fixed point."""
    u %= p
    if u == 0:
        raise ValueError("Teichmüller lift of 0 mod p is not a unit")
    mod = p ** digits
    x = u
    while True:
        y = pow(x, p, mod)
        if y == x:
            return x
        x = y


def teichmuller(u: int, policy: PrecisionPolicy) -> PadicScalar:
    p, W = policy.prime, policy.working
    return PadicScalar(p, 0, teichmuller_int(u, p, W), W)


def principal_unit(a: int, policy: PrecisionPolicy) -> PadicScalar:
    """<a> = a / omega(a), an element of 1 + pZ_p."""
    p, W = policy.prime, policy.working
    if a % p == 0:
        raise ValueError(f"{a} is divisible by {p}")
    return PadicScalar.from_int(p, a, W) / teichmuller(a, policy)


# -- logarithms ----------------------------------------------------------------

def iwasawa_log(x: CycloElement, policy: PrecisionPolicy) -> CycloElement:
    """Branch-fixed p-adic logarithm on Q_p(zeta_p)^x.

    If x is known to absolute precision A and has valuation mu, every lift
    has the same logarithm modulo p**floor(A - mu); that is the precision
    of the result (capped at the working precision).
    """
    p = x.prime
    mu = x.valuation()
    out = min(math.floor(x.absprec - mu), policy.working)
    if out < 1:
        raise PrecisionError(f"log input has only {x.absprec - mu} relative digits")
    ints, shift, _ = x.to_fixed()
    mu0 = mu - shift
    f = math.floor(mu0)
    m = int((mu0 - f) * (p - 1))
    X = kernel.exact_divide(ints, p ** f) if f else ints
    y = kernel.exact_divide(kernel.power(X, p - 1, p, p ** (out + m)), p ** m)
    z = kernel.power(y, p - 1, p, p ** out)
    lz = kernel.log_one_unit(z, p, out)
    mod = p ** out
    inv = pow((p - 1) ** 2, -1, mod)
    return CycloElement.from_fixed(p, [c * inv % mod for c in lz], out, cap=policy.working)


def log_scalar(x: PadicScalar, policy: PrecisionPolicy | None = None) -> PadicScalar:
    """The same branch restricted to Q_p^x: log(p) = 0, log(omega) = 0."""
    p = x.prime
    if x.is_zero:
        raise PrecisionError("logarithm of a value that is zero at precision")
    t = x.trusted
    if policy is not None:
        t = min(t, policy.working)
    mod = p ** t
    z = pow(x.unit, p - 1, mod)
    lz = kernel.log_one_unit_int(z, p, t)
    return PadicScalar.from_residue(p, lz * pow(p - 1, -1, mod), t)


# -- Morita's Gamma ------------------------------------------------------------

def _as_residue(x, p: int, digits: int) -> int:
    mod = p ** digits
    if isinstance(x, PadicScalar):
        return x.residue(digits)
    x = Fraction(x)
    if x.denominator % p == 0:
        raise ValueError(f"{x} is not in Z_{p}")
    return x.numerator * pow(x.denominator, -1, mod) % mod


def morita_gamma_int(n: int, p: int, digits: int) -> int:
    """Gamma_p(n) = (-1)**n * prod_{0<j<n, p∤j} j modulo p**digits."""
    mod = p ** digits
    acc = 1
    for j in range(1, n):
        if j % p:
            acc = acc * j % mod
    return (-acc if n % 2 else acc) % mod


def morita_gamma(x, digits: int, policy: PrecisionPolicy,
                 cost_limit: int = DEFAULT_GAMMA_COST_LIMIT) -> PadicScalar:
    """Gamma_p(x) to ``digits`` digits via the positive representative of x.

    Accuracy rests on |Gamma_p(x) - Gamma_p(y)| <= |x - y| for odd p.
    """
    p = policy.prime
    if digits < 1:
        raise ValueError("need at least one digit")
    if p ** digits > cost_limit:
        raise CostBoundError(f"{p}^{digits} exceeds the Gamma_p cost limit {cost_limit}")
    n = _as_residue(x, p, digits)
    return PadicScalar.from_residue(p, morita_gamma_int(n, p, digits), digits)


# -- Gauss sums and the Dwork uniformizer -------------------------------------

@dataclass(frozen=True)
class GaussConvention:
    """tau = sum_t omega(t)**(sign*a) * zeta**(embedding*t), sign = -1 by default."""

    conjugate: bool = False
    embedding: int = 1

    @classmethod
    def parse(cls, text: str) -> GaussConvention:
        if text in ("", "standard"):
            return cls()
        if text == "conjugate":
            return cls(conjugate=True)
        if text.startswith("reembed:"):
            return cls(embedding=int(text.split(":", 1)[1]))
        raise ValueError(f"unknown Gauss-sum convention {text!r}")

    def __str__(self) -> str:
        if self.conjugate:
            return "conjugate" if self.embedding == 1 else f"conjugate+reembed:{self.embedding}"
        return "standard" if self.embedding == 1 else f"reembed:{self.embedding}"

    def describe(self) -> str:
        e = "-a" if not self.conjugate else "a"
        z = "zeta^t" if self.embedding == 1 else f"zeta^({self.embedding}t)"
        return f"tau(a) = sum_(t=1)^(p-1) omega(t)^({e}) {z}"


STANDARD = GaussConvention()


def gauss_sum(a: int, policy: PrecisionPolicy,
              convention: GaussConvention = STANDARD) -> CycloElement:
    p, W = policy.prime, policy.working
    if not 1 <= a <= p - 1:
        raise ValueError(f"a must lie in 1..{p - 1}")
    if convention.embedding % p == 0:
        raise ValueError("re-embedding exponent must be prime to p")
    mod = p ** W
    e = a if convention.conjugate else -a
    ints = [0] * (p - 1)
    top = 0
    for t in range(1, p):
        c = pow(teichmuller_int(t, p, W), e, mod)
        k = convention.embedding * t % p
        if k == p - 1:
            top += c
        else:
            ints[k] += c
    return CycloElement.from_fixed(p, [n - top for n in ints], W)


@dataclass(frozen=True)
class DworkUniformizer:
    """pi with pi**(p-1) = -p and pi = zeta_p - 1 modulo pi**2."""

    pi: CycloElement

    @property
    def prime(self) -> int:
        return self.pi.prime


def dwork_pi(policy: PrecisionPolicy) -> DworkUniformizer:
    """Newton's iteration for x**(p-1) + p from x0 = zeta_p - 1.

    Written as x = (zeta - 1) * u the iteration is Newton for
    u**(p-1) = c with c = -p / (zeta - 1)**(p-1) = 1 mod pi, where the
    derivative is a unit and Hensel's lemma applies.
    """
    p, W = policy.prime, policy.working
    mod = p ** W
    one = [1] + [0] * (p - 2)
    zm1 = [p ** (W + 1) - 1, 1] + [0] * (p - 3)  # zeta - 1
    eps = kernel.exact_divide(kernel.power(zm1, p - 1, p, p ** (W + 1)), p)
    c = [(-x) % mod for x in kernel.inverse_unit(eps, p, mod, W)]
    u = one
    for _ in range(2 * math.ceil(math.log2(W * (p - 1) + 2)) + 4):
        up = kernel.power(u, p - 2, p, mod)
        g = [(x - y) % mod for x, y in zip(kernel.mul(up, u, p, mod), c)]
        if not any(g):
            break
        dg = [x * (p - 1) % mod for x in up]
        step = kernel.mul(g, kernel.inverse_unit(dg, p, mod, W), p, mod)
        u = [(x - y) % mod for x, y in zip(u, step)]
    else:
        raise ArithmeticError("Dwork uniformizer Newton iteration did not converge")
    pi = kernel.mul([x % mod for x in zm1], u, p, mod)
    return DworkUniformizer(CycloElement.from_fixed(p, pi, W))


# -- the logarithm table -------------------------------------------------------

def v_of(a: int, policy: PrecisionPolicy,
         convention: GaussConvention = STANDARD) -> PadicScalar:
    """log_p tau(omega^-a), which lies in Q_p because tau**(p-1) does."""
    lg = iwasawa_log(gauss_sum(a, policy, convention), policy)
    if not lg.is_scalar_at_precision():
        raise RationalityError(
            f"log tau for a={a} has non-scalar coordinates above floor {lg.nonscalar_floor()}")
    return lg.scalar_part()


def cyclo_unit_log(a: int, policy: PrecisionPolicy) -> CycloElement:
    """L_a = log_p(1 - zeta**a)."""
    p, W = policy.prime, policy.working
    if not 1 <= a <= p - 1:
        raise ValueError(f"a must lie in 1..{p - 1}")
    x = CycloElement.one(p, W) - CycloElement.zeta(p, W, a)
    return iwasawa_log(x, policy)


@dataclass(frozen=True)
class LogTable:
    prime: int
    v: tuple[PadicScalar, ...]     # v[a-1] = log tau(omega^-a)
    L: tuple[CycloElement, ...]    # L[a-1] = log(1 - zeta^a)

    @property
    def w(self) -> tuple[CycloElement, ...]:
        return tuple(-x for x in self.L)

    def v_at(self, a: int) -> PadicScalar:
        return self.v[a - 1]

    def L_at(self, a: int) -> CycloElement:
        return self.L[a - 1]


def build_log_table(policy: PrecisionPolicy, convention: GaussConvention = STANDARD,
                    threads: int = 1) -> LogTable:
    p = policy.prime
    idx = range(1, p)
    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            v = list(pool.map(lambda a: v_of(a, policy, convention), idx))
            L = list(pool.map(lambda a: cyclo_unit_log(a, policy), idx))
    else:
        v = [v_of(a, policy, convention) for a in idx]
        L = [cyclo_unit_log(a, policy) for a in idx]
    return LogTable(p, tuple(v), tuple(L))


# -- Gross–Koblitz -------------------------------------------------------------

@dataclass(frozen=True)
class GrossKoblitzResult:
    a: int
    digits: int
    convention: str
    multiplicative_residual: CycloElement | None
    log_residual: PadicScalar

    @property
    def multiplicative_floor(self) -> Fraction | None:
        if self.multiplicative_residual is None:
            return None
        return self.multiplicative_residual.floor()

    @property
    def log_floor(self) -> int | float:
        return self.log_residual.floor

    @property
    def multiplicative_passed(self) -> bool | None:
        r = self.multiplicative_residual
        if r is None:
            return None
        return r.is_zero and r.floor() >= self.digits

    @property
    def log_passed(self) -> bool:
        return self.log_residual.is_zero and self.log_residual.floor >= self.digits


def gamma_at_fraction(a: int, digits: int, policy: PrecisionPolicy,
                      cost_limit: int = DEFAULT_GAMMA_COST_LIMIT) -> PadicScalar:
    """Gamma_p(a/(p-1)) with the argument read as a*(p-1)^-1 mod p**digits."""
    return morita_gamma(Fraction(a, policy.prime - 1), digits, policy, cost_limit)


def gk_log_residual(a: int, digits: int, policy: PrecisionPolicy,
                    convention: GaussConvention = STANDARD,
                    v: PadicScalar | None = None,
                    cost_limit: int = DEFAULT_GAMMA_COST_LIMIT) -> PadicScalar:
    """v(a) - log_p Gamma_p(a/(p-1)), meaningful to ``digits`` digits."""
    if v is None:
        v = v_of(a, policy, convention)
    g = gamma_at_fraction(a, digits, policy, cost_limit)
    return v.with_absprec(digits) - log_scalar(g, policy)


def gross_koblitz_check(a: int, digits: int, policy: PrecisionPolicy,
                        convention: GaussConvention = STANDARD,
                        uniformizer: DworkUniformizer | None = None,
                        cost_limit: int = DEFAULT_GAMMA_COST_LIMIT) -> GrossKoblitzResult:
    """Residuals of tau(omega^-a) = -pi**a Gamma_p(a/(p-1)) and of its log.

    The multiplicative form fails at a = p-1 in this normalization
    (tau(omega^0) = -1, while -pi**(p-1) Gamma_p(1) = -p), so that index
    is refused; the log-level comparison holds there and is available
    through ``gk_log_residual``.
    """
    p = policy.prime
    if not 1 <= a <= p - 2:
        raise ValueError(f"multiplicative Gross–Koblitz check needs 1 <= a <= {p - 2}")
    if uniformizer is None:
        uniformizer = dwork_pi(policy)
    g = gamma_at_fraction(a, digits, policy, cost_limit)
    tau = gauss_sum(a, policy, convention)
    resid = tau + (uniformizer.pi ** a) * g
    lres = gk_log_residual(a, digits, policy, convention, cost_limit=cost_limit)
    return GrossKoblitzResult(a, digits, str(convention), resid, lres)


def alternative_conventions(p: int, preferred: GaussConvention = STANDARD):
    """The preferred convention, then the conjugate, then re-embeddings."""
    seen = [preferred]
    for c in [STANDARD, GaussConvention(conjugate=True)] + [
            GaussConvention(embedding=e) for e in range(2, p)]:
        if c not in seen:
            seen.append(c)
    return seen


def find_gk_convention(digits: int, policy: PrecisionPolicy,
                       preferred: GaussConvention = STANDARD,
                       cost_limit: int = DEFAULT_GAMMA_COST_LIMIT):
    """Try conventions until the multiplicative check passes for every a.

    Returns ``(convention or None, attempts)`` where ``attempts`` records the
    worst residual floor seen under each convention tried.
    """
    pi = dwork_pi(policy)
    p = policy.prime
    attempts = []
    for conv in alternative_conventions(p, preferred):
        results = [gross_koblitz_check(a, digits, policy, conv, pi, cost_limit)
                   for a in range(1, p - 1)]
        ok = all(r.multiplicative_passed for r in results)
        worst = min((r.multiplicative_floor for r in results), default=None)
        attempts.append({"convention": str(conv), "passed": ok,
                         "worst_floor": worst, "results": results})
        if ok:
            return conv, attempts
    return None, attempts
