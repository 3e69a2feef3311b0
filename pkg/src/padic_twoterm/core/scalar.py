"""Tracked-precision elements of Q_p.

A nonzero value is stored as ``p**valuation * unit`` where ``unit`` is only
known modulo ``p**trusted``.  Zero comes in two flavours: the exact zero and
"zero at precision", a value known to be divisible by ``p**floor`` and
nothing more.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction


class PadicError(ArithmeticError):
    """Base class for p-adic arithmetic failures."""


class PrecisionError(PadicError):
    """Raised when a computation has no trusted digits left."""


class PrimeMismatchError(PadicError, ValueError):
    pass


def valuation_int(n: int, p: int) -> int:
    """p-adic valuation of a nonzero integer."""
    if n == 0:
        raise ValueError("valuation of 0 is infinite")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def valuation_rational(q: Fraction | int, p: int) -> int:
    q = Fraction(q)
    return valuation_int(q.numerator, p) - valuation_int(q.denominator, p)


@dataclass(frozen=True)
class PrecisionPolicy:
    """Requested output digits ``target`` plus ``guard`` digits of headroom."""

    prime: int
    target: int
    guard: int

    def __post_init__(self):
        if self.target < 1:
            raise ValueError("target digits must be positive")
        if self.guard < self.min_guard(self.prime, self.target):
            raise ValueError(
                f"guard {self.guard} below minimum "
                f"{self.min_guard(self.prime, self.target)} for p={self.prime}"
            )

    @staticmethod
    def min_guard(p: int, target: int) -> int:
        return 10 + -(-target // (p - 1))

    @classmethod
    def for_prime(cls, p: int, target: int, guard: int | None = None) -> PrecisionPolicy:
        if guard is None:
            guard = cls.min_guard(p, target)
        return cls(p, target, guard)

    @property
    def working(self) -> int:
        return self.target + self.guard


@dataclass(frozen=True, slots=True)
class PadicScalar:
    prime: int
    valuation: int | None
    unit: int
    trusted: int
    is_zero: bool = False

    def __post_init__(self):
        if self.is_zero:
            if self.unit != 0 or self.trusted != 0:
                raise ValueError("zero carries no unit digits")
            return
        if self.trusted < 1:
            raise PrecisionError("no trusted digits left")
        if self.unit % self.prime == 0 or not 0 < self.unit < self.prime ** self.trusted:
            raise ValueError("unit must be a reduced residue prime to p")

    # -- constructors -------------------------------------------------------

    @classmethod
    def exact_zero(cls, p: int) -> PadicScalar:
        return cls(p, None, 0, 0, True)

    @classmethod
    def zero_at(cls, p: int, floor: int) -> PadicScalar:
        """The value known only to be divisible by ``p**floor``."""
        return cls(p, floor, 0, 0, True)

    @classmethod
    def from_residue(cls, p: int, n: int, absprec: int, shift: int = 0,
                     cap: int | None = None) -> PadicScalar:
        """Value ``n * p**shift`` where ``n`` is known modulo ``p**absprec``.

        ``absprec`` counts digits of ``n``, so the result is known modulo
        ``p**(absprec + shift)``.  ``cap`` bounds the relative precision.
        """
        if absprec <= 0:
            return cls.zero_at(p, absprec + shift)
        n %= p ** absprec
        if n == 0:
            return cls.zero_at(p, absprec + shift)
        v = valuation_int(n, p)
        t = absprec - v
        if cap is not None and t > cap:
            t = cap
        return cls(p, v + shift, (n // p ** v) % p ** t, t)

    @classmethod
    def from_int(cls, p: int, n: int, digits: int) -> PadicScalar:
        """An exact integer, carried with ``digits`` relative digits."""
        if n == 0:
            return cls.exact_zero(p)
        v = valuation_int(n, p)
        return cls(p, v, (n // p ** v) % p ** digits, digits)

    @classmethod
    def from_rational(cls, p: int, q: Fraction | int, digits: int) -> PadicScalar:
        q = Fraction(q)
        if q == 0:
            return cls.exact_zero(p)
        num, den = q.numerator, q.denominator
        vn = valuation_int(num, p)
        vd = valuation_int(den, p)
        mod = p ** digits
        u = (num // p ** vn) * pow(den // p ** vd, -1, mod) % mod
        return cls(p, vn - vd, u, digits)

    # -- inspection ---------------------------------------------------------

    @property
    def absprec(self) -> float | int:
        """Digits known in absolute terms; ``inf`` for the exact zero."""
        if self.is_zero:
            return math.inf if self.valuation is None else self.valuation
        return self.valuation + self.trusted

    @property
    def is_exact_zero(self) -> bool:
        return self.is_zero and self.valuation is None

    @property
    def floor(self) -> float | int:
        """Guaranteed lower bound on the valuation."""
        if self.is_exact_zero:
            return math.inf
        return self.valuation

    def lift(self) -> Fraction:
        """A rational representative (integral unit part times p**v)."""
        if self.is_zero:
            return Fraction(0)
        return Fraction(self.unit) * Fraction(self.prime) ** self.valuation

    def residue(self, digits: int) -> int:
        """Representative in [0, p**digits) of an element of Z_p."""
        if self.absprec < digits:
            raise PrecisionError(f"only {self.absprec} absolute digits known")
        if self.is_zero:
            return 0
        if self.valuation < 0:
            raise ValueError("not a p-adic integer")
        return self.unit * self.prime ** self.valuation % self.prime ** digits

    def truncate(self, digits: int) -> PadicScalar:
        """Keep at most ``digits`` relative digits."""
        if self.is_zero or self.trusted <= digits:
            return self
        return PadicScalar(self.prime, self.valuation,
                           self.unit % self.prime ** digits, digits)

    def with_absprec(self, absprec: int) -> PadicScalar:
        """Forget every digit at or beyond ``p**absprec``."""
        if self.absprec <= absprec:
            return self
        if self.is_zero:
            return PadicScalar.zero_at(self.prime, absprec)
        t = absprec - self.valuation
        if t < 1:
            return PadicScalar.zero_at(self.prime, absprec)
        return PadicScalar(self.prime, self.valuation,
                           self.unit % self.prime ** t, t)

    def agrees_with(self, other: PadicScalar, digits: int | None = None) -> bool:
        """True when the two values coincide on every commonly known digit.

        With ``digits`` given, also require at least that many absolute digits
        to have been compared.
        """
        d = self - other
        if not d.is_zero:
            return False
        return digits is None or d.floor >= digits

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> PadicScalar:
        if isinstance(other, PadicScalar):
            if other.prime != self.prime:
                raise PrimeMismatchError(f"{self.prime} vs {other.prime}")
            return other
        if isinstance(other, (int, Fraction)):
            # exact constants must not limit precision
            digits = max(self.trusted, 1)
            if self.absprec != math.inf and other != 0:
                digits = max(digits, int(self.absprec) - valuation_rational(other, self.prime) + 1)
            return PadicScalar.from_rational(self.prime, other, digits)
        return NotImplemented

    def _add(self, other: PadicScalar) -> PadicScalar:
        p = self.prime
        A = min(self.absprec, other.absprec)
        if A == math.inf:
            return self
        terms = [x for x in (self, other) if not x.is_zero]
        if not terms:
            return PadicScalar.zero_at(p, int(A))
        A = int(A)
        v = min(x.valuation for x in terms)
        if v >= A:
            return PadicScalar.zero_at(p, A)
        n = sum(x.unit * p ** (x.valuation - v) for x in terms)
        return PadicScalar.from_residue(p, n, A - v, shift=v)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._add(other)

    __radd__ = __add__

    def __neg__(self) -> PadicScalar:
        if self.is_zero:
            return self
        mod = self.prime ** self.trusted
        return PadicScalar(self.prime, self.valuation, (-self.unit) % mod, self.trusted)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._add(-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other._add(-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.prime
        if self.is_exact_zero or other.is_exact_zero:
            return PadicScalar.exact_zero(p)
        if self.is_zero or other.is_zero:
            return PadicScalar.zero_at(p, self.valuation + other.valuation)
        t = min(self.trusted, other.trusted)
        return PadicScalar(p, self.valuation + other.valuation,
                           self.unit * other.unit % p ** t, t)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._div(other)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other._div(self)

    def _div(self, other: PadicScalar) -> PadicScalar:
        p = self.prime
        if other.is_exact_zero:
            raise ZeroDivisionError("division by exact p-adic zero")
        if other.is_zero:
            raise PrecisionError(
                f"division by a value that is zero at precision {other.valuation}")
        if self.is_exact_zero:
            return self
        if self.is_zero:
            return PadicScalar.zero_at(p, self.valuation - other.valuation)
        t = min(self.trusted, other.trusted)
        mod = p ** t
        return PadicScalar(p, self.valuation - other.valuation,
                           self.unit * pow(other.unit, -1, mod) % mod, t)

    def __pow__(self, n: int) -> PadicScalar:
        if n < 0:
            return PadicScalar.from_int(self.prime, 1, max(self.trusted, 1)) / self ** (-n)
        if n == 0:
            return PadicScalar.from_int(self.prime, 1, max(self.trusted, 1))
        if self.is_zero:
            if self.is_exact_zero:
                return self
            return PadicScalar.zero_at(self.prime, self.valuation * n)
        mod = self.prime ** self.trusted
        return PadicScalar(self.prime, self.valuation * n,
                           pow(self.unit, n, mod), self.trusted)

    # -- text form ----------------------------------------------------------

    def __str__(self) -> str:
        if self.is_exact_zero:
            return "0"
        return f"{self.prime}^{self.valuation} * {self.unit} :: {self.trusted}"

    def __repr__(self) -> str:
        return f"PadicScalar({self})"

    @staticmethod
    def parse(text: str, p: int | None = None) -> PadicScalar:
        return parse_scalar(text, p)


_TEXT = re.compile(r"^\s*(\d+)\^(-?\d+) \* (\d+) :: (\d+)\s*$")


def parse_scalar(text: str, p: int | None = None) -> PadicScalar:
    """Parse the canonical ``p^v * u :: t`` form (``0`` is the exact zero)."""
    if text.strip() == "0":
        if p is None:
            raise ValueError("the exact zero needs an explicit prime")
        return PadicScalar.exact_zero(p)
    m = _TEXT.match(text)
    if m is None:
        raise ValueError(f"not a canonical p-adic scalar: {text!r}")
    prime, v, u, t = (int(g) for g in m.groups())
    if p is not None and p != prime:
        raise PrimeMismatchError(f"{prime} vs {p}")
    if u == 0 and t == 0:
        return PadicScalar.zero_at(prime, v)
    return PadicScalar(prime, v, u, t)

