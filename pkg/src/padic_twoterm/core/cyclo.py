"""Elements of Q_p(zeta_p) = Q_p[x]/Phi_p(x) with tracked coordinates."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

from .scalar import PadicScalar, PrecisionError, PrimeMismatchError, valuation_rational


@lru_cache(maxsize=None)
def _pi_from_zeta(p: int) -> tuple[tuple[int, ...], ...]:
    # zeta^i = sum_j C(i, j) pi^j
    n = p - 1
    return tuple(tuple(comb(i, j) for j in range(n)) for i in range(n))


@lru_cache(maxsize=None)
def _zeta_from_pi(p: int) -> tuple[tuple[int, ...], ...]:
    # pi^j = sum_i C(j, i) (-1)^(j-i) zeta^i
    n = p - 1
    return tuple(tuple(comb(j, i) * (-1) ** (j - i) for i in range(n)) for j in range(n))


@dataclass(frozen=True)
class CycloElement:
    """Coordinates over the basis 1, zeta, ..., zeta^(p-2)."""

    prime: int
    coords: tuple[PadicScalar, ...]

    def __post_init__(self):
        if len(self.coords) != self.prime - 1:
            raise ValueError(f"need {self.prime - 1} coordinates, got {len(self.coords)}")
        for c in self.coords:
            if c.prime != self.prime:
                raise PrimeMismatchError(f"{c.prime} vs {self.prime}")

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_scalar(cls, x: PadicScalar) -> CycloElement:
        p = x.prime
        return cls(p, (x,) + (PadicScalar.exact_zero(p),) * (p - 2))

    @classmethod
    def from_ints(cls, p: int, ints, digits: int) -> CycloElement:
        """Exact integer coordinates carried with ``digits`` relative digits."""
        return cls(p, tuple(PadicScalar.from_int(p, n, digits) for n in ints))

    @classmethod
    def one(cls, p: int, digits: int) -> CycloElement:
        return cls.from_scalar(PadicScalar.from_int(p, 1, digits))

    @classmethod
    def zeta(cls, p: int, digits: int, k: int = 1) -> CycloElement:
        """zeta_p**k as an exact element."""
        k %= p
        ints = [0] * (p - 1)
        if k == p - 1:
            ints = [-1] * (p - 1)
        else:
            ints[k] = 1
        return cls.from_ints(p, ints, digits)

    @classmethod
    def from_fixed(cls, p: int, ints, absprec: int, shift: int = 0,
                   cap: int | None = None) -> CycloElement:
        """Coordinates ``n_i * p**shift`` with each ``n_i`` known mod p**absprec."""
        return cls(p, tuple(PadicScalar.from_residue(p, n, absprec, shift, cap)
                            for n in ints))

    @classmethod
    def from_pi_coordinates(cls, p: int, coords) -> CycloElement:
        out = [PadicScalar.exact_zero(p)] * (p - 1)
        table = _zeta_from_pi(p)
        for j, d in enumerate(coords):
            if d.is_exact_zero:
                continue
            for i, m in enumerate(table[j]):
                if m:
                    out[i] = out[i] + d * m
        return cls(p, tuple(out))

    # -- inspection ---------------------------------------------------------

    @property
    def absprec(self) -> float | int:
        return min(c.absprec for c in self.coords)

    @property
    def is_zero(self) -> bool:
        """All coordinates are zero, exactly or at precision."""
        return all(c.is_zero for c in self.coords)

    @property
    def coordinate_floor(self) -> float | int:
        """Smallest coordinate valuation (or zero floor)."""
        return min(c.floor for c in self.coords)

    def scalar_part(self) -> PadicScalar:
        return self.coords[0]

    def nonscalar_floor(self) -> float | int:
        """Floor of the coordinates on zeta, ..., zeta^(p-2)."""
        return min((c.floor for c in self.coords[1:]), default=math.inf)

    def is_scalar_at_precision(self) -> bool:
        return all(c.is_zero for c in self.coords[1:])

    def pi_coordinates(self) -> tuple[PadicScalar, ...]:
        """Coordinates over 1, pi, ..., pi^(p-2) with pi = zeta - 1."""
        p = self.prime
        table = _pi_from_zeta(p)
        out = [PadicScalar.exact_zero(p)] * (p - 1)
        for i, c in enumerate(self.coords):
            if c.is_exact_zero:
                continue
            for j in range(i + 1):
                out[j] = out[j] + c * table[i][j]
        return tuple(out)

    def valuation(self) -> Fraction:
        """Normalized valuation (val p = 1); denominators divide p-1.

        The pi-adic coordinates live in distinct classes modulo 1 after the
        shift j/(p-1), so the smallest nonzero one determines the answer;
        it must also beat every zero-at-precision coordinate's floor.
        """
        p = self.prime
        best = None
        bound = math.inf
        for j, d in enumerate(self.pi_coordinates()):
            if d.is_exact_zero:
                continue
            cand = Fraction(d.valuation) + Fraction(j, p - 1)
            if d.is_zero:
                bound = min(bound, cand)
            elif best is None or cand < best:
                best = cand
        if best is None:
            if bound == math.inf:
                raise ZeroDivisionError("valuation of the exact zero")
            raise PrecisionError(f"element is zero at precision {bound}")
        if best >= bound:
            raise PrecisionError("valuation not determined at this precision")
        return best

    def floor(self) -> Fraction:
        """Guaranteed lower bound on the valuation, exact when determinable."""
        if self.is_zero:
            f = self.coordinate_floor
            if f == math.inf:
                raise ValueError("floor of the exact zero")
            return Fraction(f)
        try:
            return self.valuation()
        except PrecisionError:
            return Fraction(self.coordinate_floor)

    def to_fixed(self) -> tuple[list[int], int, float | int]:
        """Integer lift: (ints, shift, digits) with coords = ints * p**shift.

        ``digits`` is how many digits of the ints are known (``inf`` if exact).
        """
        p = self.prime
        floors = [c.floor for c in self.coords]
        shift = min(floors)
        if shift == math.inf:
            return [0] * (p - 1), 0, math.inf
        ints = [0 if c.is_zero else c.unit * p ** (c.valuation - shift)
                for c in self.coords]
        return ints, shift, self.absprec - shift

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other: CycloElement):
        if other.prime != self.prime:
            raise PrimeMismatchError(f"{self.prime} vs {other.prime}")

    def _constant(self, q) -> PadicScalar:
        """An exact rational carried to the element's absolute precision."""
        p = self.prime
        if q == 0:
            return PadicScalar.exact_zero(p)
        A = self.absprec
        if A == math.inf:
            digits = max((c.trusted for c in self.coords), default=1) or 1
        else:
            digits = max(int(A) - valuation_rational(q, p) + 1, 1)
        return PadicScalar.from_rational(p, q, digits)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self._constant(other)
        if isinstance(other, PadicScalar):
            return CycloElement(self.prime, (self.coords[0] + other,) + self.coords[1:])
        if not isinstance(other, CycloElement):
            return NotImplemented
        self._check(other)
        return CycloElement(self.prime, tuple(a + b for a, b in zip(self.coords, other.coords)))

    __radd__ = __add__

    def __neg__(self) -> CycloElement:
        return CycloElement(self.prime, tuple(-c for c in self.coords))

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (PadicScalar, int, Fraction)):
            return CycloElement(self.prime, tuple(c * other for c in self.coords))
        if not isinstance(other, CycloElement):
            return NotImplemented
        self._check(other)
        p = self.prime
        zero = PadicScalar.exact_zero(p)
        prod = [zero] * p
        for i, a in enumerate(self.coords):
            if a.is_exact_zero:
                continue
            for j, b in enumerate(other.coords):
                if b.is_exact_zero:
                    continue
                k = (i + j) % p
                prod[k] = prod[k] + a * b
        top = prod[p - 1]
        if top.is_exact_zero:
            return CycloElement(p, tuple(prod[:p - 1]))
        # zeta^(p-1) = -(1 + zeta + ... + zeta^(p-2))
        return CycloElement(p, tuple(c - top for c in prod[:p - 1]))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> CycloElement:
        if n < 0:
            return self.inverse() ** (-n)
        digits = max((c.trusted for c in self.coords), default=1) or 1
        result = CycloElement.one(self.prime, digits)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def times_zeta(self) -> CycloElement:
        c = self.coords
        top = c[-1]
        shifted = (PadicScalar.exact_zero(self.prime),) + c[:-1]
        if top.is_exact_zero:
            return CycloElement(self.prime, shifted)
        return CycloElement(self.prime, tuple(x - top for x in shifted))

    def inverse(self) -> CycloElement:
        """Solve self * y = 1 as a (p-1)x(p-1) linear system over Q_p."""
        p = self.prime
        n = p - 1
        if self.is_zero:
            if all(c.is_exact_zero for c in self.coords):
                raise ZeroDivisionError("inverse of the exact zero")
            raise PrecisionError("inverse of an element that is zero at precision")
        # column j holds the coordinates of self * zeta^j
        cols = [self]
        for _ in range(n - 1):
            cols.append(cols[-1].times_zeta())
        rows = [[cols[j].coords[i] for j in range(n)] for i in range(n)]
        digits = max(c.trusted for c in self.coords if not c.is_zero)
        rhs = [PadicScalar.from_int(p, 1, digits)] + [PadicScalar.exact_zero(p)] * (n - 1)
        return CycloElement(p, tuple(solve_linear(rows, rhs)))

    def __truediv__(self, other):
        if isinstance(other, (PadicScalar, int, Fraction)):
            return CycloElement(self.prime, tuple(c / other for c in self.coords))
        if not isinstance(other, CycloElement):
            return NotImplemented
        return self * other.inverse()

    # -- text form ----------------------------------------------------------

    def __str__(self) -> str:
        return "[" + ", ".join(str(c) for c in self.coords) + "]"

    def truncate(self, digits: int) -> CycloElement:
        return CycloElement(self.prime, tuple(c.truncate(digits) for c in self.coords))


def solve_linear(rows: list[list[PadicScalar]], rhs: list[PadicScalar]) -> list[PadicScalar]:
    """Gaussian elimination over Q_p, pivoting on the smallest valuation."""
    n = len(rows)
    a = [list(r) + [b] for r, b in zip(rows, rhs)]
    for col in range(n):
        piv = None
        for r in range(col, n):
            x = a[r][col]
            if x.is_zero:
                continue
            if piv is None or x.valuation < a[piv][col].valuation:
                piv = r
        if piv is None:
            raise PrecisionError("singular system at working precision")
        a[col], a[piv] = a[piv], a[col]
        pv = a[col][col]
        for r in range(col + 1, n):
            x = a[r][col]
            if x.is_exact_zero:
                continue
            f = x / pv
            a[r] = [a[r][k] - f * a[col][k] if k >= col else a[r][k] for k in range(n + 1)]
    out = [None] * n
    for r in range(n - 1, -1, -1):
        s = a[r][n]
        for k in range(r + 1, n):
            if not a[r][k].is_exact_zero:
                s = s - a[r][k] * out[k]
        out[r] = s / a[r][r]
    return out
