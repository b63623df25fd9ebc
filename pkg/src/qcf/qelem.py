"""Arithmetic in Q(sqrt(d)) with exact rational coordinates.

QuadElt holds a + b*sqrt(d) for a fixed (not necessarily squarefree)
radicand d.  It exists because products and inverses of field elements are
awkward in the (p + sqrt d)/q normal form but trivial in coordinates; the
Surd type converts to and from it at module boundaries.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from ._intmath import is_square
from .surd import Surd, mk_surd


@dataclass(frozen=True)
class QuadElt:
    a: Fraction
    b: Fraction
    d: int

    @staticmethod
    def make(a, b, d: int) -> "QuadElt":
        return QuadElt(Fraction(a), Fraction(b), d)

    @staticmethod
    def from_surd(s: Surd) -> "QuadElt":
        return QuadElt(Fraction(s.num_p, s.den_q), Fraction(1, s.den_q), s.rad_d)

    def _chk(self, other: "QuadElt") -> None:
        if self.d != other.d:
            raise ValueError(f"mixed radicands {self.d} vs {other.d}")

    def __add__(self, other):
        if isinstance(other, QuadElt):
            self._chk(other)
            return QuadElt(self.a + other.a, self.b + other.b, self.d)
        return QuadElt(self.a + Fraction(other), self.b, self.d)

    __radd__ = __add__

    def __neg__(self):
        return QuadElt(-self.a, -self.b, self.d)

    def __sub__(self, other):
        return self + (-other if isinstance(other, QuadElt) else QuadElt(Fraction(-other), Fraction(0), self.d))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, QuadElt):
            self._chk(other)
            return QuadElt(
                self.a * other.a + self.b * other.b * self.d,
                self.a * other.b + self.b * other.a,
                self.d,
            )
        return QuadElt(self.a * Fraction(other), self.b * Fraction(other), self.d)

    __rmul__ = __mul__

    def conj(self) -> "QuadElt":
        return QuadElt(self.a, -self.b, self.d)

    def norm(self) -> Fraction:
        return self.a * self.a - self.b * self.b * self.d

    def inverse(self) -> "QuadElt":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("zero element")
        return QuadElt(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other):
        if isinstance(other, QuadElt):
            return self * other.inverse()
        return self * (Fraction(1) / Fraction(other))

    def is_rational(self) -> bool:
        return self.b == 0

    def sign(self) -> int:
        """Exact sign of a + b*sqrt(d)."""
        a, b = self.a, self.b
        if b == 0:
            return -1 if a < 0 else (0 if a == 0 else 1)
        if a == 0:
            return 1 if b > 0 else -1
        sa = 1 if a > 0 else -1
        sb = 1 if b > 0 else -1
        if sa == sb:
            return sa
        # compare a^2 with b^2 d; signs differ, so the bigger magnitude wins
        lhs = a * a
        rhs = b * b * self.d
        if lhs == rhs:
            return 0
        return sa if lhs > rhs else sb

    def __lt__(self, other) -> bool:
        o = other if isinstance(other, QuadElt) else QuadElt(Fraction(other), Fraction(0), self.d)
        return (self - o).sign() < 0

    def __gt__(self, other) -> bool:
        o = other if isinstance(other, QuadElt) else QuadElt(Fraction(other), Fraction(0), self.d)
        return (self - o).sign() > 0

    def floor(self) -> int:
        """Exact floor, via integer square roots on a common denominator."""
        if self.b == 0:
            return self.a.numerator // self.a.denominator
        q = self.a.denominator * self.b.denominator
        na = self.a.numerator * self.b.denominator
        nb = self.b.numerator * self.a.denominator  # value = (na + nb*sqrt d)/q
        if q < 0:
            q, na, nb = -q, -na, -nb
        if nb > 0:
            r = math.isqrt(nb * nb * self.d)
            return (na + r) // q
        r = math.isqrt(nb * nb * self.d)  # |nb| sqrt d in (r, r+1)
        return (na - r - 1) // q

    def to_surd(self) -> Surd:
        """Convert to the (p + sqrt(d'))/q normal form; requires b != 0."""
        if self.b == 0:
            raise ValueError("rational value is not a Surd")
        q = self.a.denominator * self.b.denominator
        na = self.a.numerator * self.b.denominator
        nb = self.b.numerator * self.a.denominator
        if nb < 0:
            na, nb, q = -na, -nb, -q
        return mk_surd(na, nb * nb * self.d, q)

    def rescale(self, new_d: int) -> "QuadElt":
        """Re-express over radicand new_d; new_d/d must be a rational square."""
        if new_d == self.d:
            return self
        num = self.d * 1
        # sqrt(d) = r * sqrt(new_d) with r = sqrt(d/new_d)
        a, b = num, new_d
        g = math.gcd(a, b)
        a, b = a // g, b // g
        if not (is_square(a) and is_square(b)):
            raise ValueError(f"{new_d} and {self.d} span different fields")
        r = Fraction(math.isqrt(a), math.isqrt(b))
        return QuadElt(self.a, self.b * r, new_d)
