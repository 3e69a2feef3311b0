"""First-order jets (f(s0), f'(s0)) over Q_p."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .scalar import PadicError, PadicScalar


class DomainError(PadicError, ValueError):
    """Argument outside the convergence domain of a p-adic series."""


@dataclass(frozen=True)
class Jet:
    value: PadicScalar
    deriv: PadicScalar

    @property
    def prime(self) -> int:
        return self.value.prime

    @classmethod
    def constant(cls, x: PadicScalar) -> Jet:
        return cls(x, PadicScalar.exact_zero(x.prime))

    @classmethod
    def variable(cls, x: PadicScalar) -> Jet:
        """The identity function expanded at ``x``."""
        return cls(x, PadicScalar.from_int(x.prime, 1, max(x.trusted, 1)))

    def _coerce(self, other) -> Jet:
        if isinstance(other, Jet):
            return other
        if isinstance(other, (PadicScalar, int, Fraction)):
            v = self.value._coerce(other) if not isinstance(other, PadicScalar) else other
            return Jet(v, PadicScalar.exact_zero(self.prime))
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Jet(self.value + o.value, self.deriv + o.deriv)

    __radd__ = __add__

    def __neg__(self) -> Jet:
        return Jet(-self.value, -self.deriv)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Jet(self.value * o.value, self.value * o.deriv + self.deriv * o.value)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        q = self.value / o.value
        return Jet(q, (self.deriv - q * o.deriv) / o.value)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o / self

    def __str__(self) -> str:
        return f"({self.value}, {self.deriv})"


def exp_series(x: PadicScalar, absprec: int | None = None) -> PadicScalar:
    """exp(x) for val(x) > 1/(p-1), i.e. val(x) >= 1 for odd p."""
    p = x.prime
    if x.is_exact_zero:
        raise DomainError("exp needs a working precision; pass a zero at precision")
    if x.floor < 1:
        raise DomainError(f"exp diverges at valuation {x.floor}")
    target = int(x.absprec) if absprec is None else min(absprec, int(x.absprec))
    total = PadicScalar.from_int(p, 1, target)
    if x.is_zero:
        return total.with_absprec(target)
    term = total
    n = 0
    v = x.valuation
    while True:
        n += 1
        # val(x^n/n!) >= n*v - (n-1)/(p-1); stop once the tail is below target
        if n * v - (n - 1) / (p - 1) >= target + 1e-9:
            break
        term = term * x / n
        total = total + term
    tail = PadicScalar.zero_at(p, target)
    return total + tail


def log_series(x: PadicScalar) -> PadicScalar:
    """Series logarithm on 1 + pZ_p."""
    p = x.prime
    t = x - 1
    if t.floor < 1:
        raise DomainError("log series needs an argument in 1 + pZ_p")
    target = int(x.absprec)
    if t.is_zero:
        return PadicScalar.zero_at(p, target)
    v = t.valuation
    total = PadicScalar.exact_zero(p)
    tk = None
    k = 0
    while True:
        k += 1
        # v_p(k) <= log_p(k); margin absorbs float rounding
        if k > 1 and k * v - math.log(k, p) >= target + 1e-9:
            break
        tk = t if tk is None else tk * t
        term = tk / k
        total = total + term if k % 2 else total - term
    return total + PadicScalar.zero_at(p, target)


def jet_exp(a: Jet) -> Jet:
    e = exp_series(a.value)
    return Jet(e, e * a.deriv)


def jet_log(a: Jet) -> Jet:
    """(log v, d/v) for v in 1 + pZ_p."""
    return Jet(log_series(a.value), a.deriv / a.value)
