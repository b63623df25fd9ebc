"""Exact real quadratic irrationals and the integer 2x2 matrices acting on them.

A Surd stores (p + sqrt(d))/q with big integers only.  The denominator is
required to divide d - p^2, which is exactly what makes one Gauss-map step
a handful of integer operations with the radicand held fixed.  Canonical
form makes equal values structurally equal, so orbit states can live in
dicts and sets.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from ._intmath import factorint, is_square, sqrt_scaled
from .errors import InvalidRadicand, OutOfRange, ZeroDenominator


@dataclass(frozen=True)
class Surd:
    """(num_p + sqrt(rad_d)) / den_q, canonical; use mk_surd to construct."""

    num_p: int
    rad_d: int
    den_q: int

    def __repr__(self) -> str:
        return f"Surd(({self.num_p}+√{self.rad_d})/{self.den_q})"

    def __float__(self) -> float:
        return float(eval_hp(self, 64))

    def to_json_dict(self) -> dict[str, str]:
        return {"p": str(self.num_p), "d": str(self.rad_d), "q": str(self.den_q)}

    @staticmethod
    def from_json_dict(obj: dict) -> "Surd":
        return mk_surd(int(obj["p"]), int(obj["d"]), int(obj["q"]))


@dataclass(frozen=True)
class RationalMat:
    """2x2 integer matrix with coprime entries, acting projectively.

    The class models elements of PGL2(Q) by their content-free integer
    representative; `height` is |det| of that representative.  Construct
    through `of` (reduces content) or `from_rationals` (clears denominators).
    """

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        g = math.gcd(math.gcd(self.a, self.b), math.gcd(self.c, self.d))
        if g != 1:
            raise ValueError(f"entries share content {g}; use RationalMat.of")
        if self.det() == 0:
            raise ValueError("singular matrix")

    @staticmethod
    def of(a: int, b: int, c: int, d: int) -> "RationalMat":
        g = math.gcd(math.gcd(a, b), math.gcd(c, d))
        if g == 0:
            raise ValueError("zero matrix")
        return RationalMat(a // g, b // g, c // g, d // g)

    @staticmethod
    def from_rationals(a, b, c, d) -> "RationalMat":
        fa, fb, fc, fd = (Fraction(x) for x in (a, b, c, d))
        lcm = 1
        for f in (fa, fb, fc, fd):
            lcm = lcm * f.denominator // math.gcd(lcm, f.denominator)
        return RationalMat.of(*(int(f * lcm) for f in (fa, fb, fc, fd)))

    @staticmethod
    def identity() -> "RationalMat":
        return RationalMat(1, 0, 0, 1)

    @staticmethod
    def diag(a: int, d: int) -> "RationalMat":
        return RationalMat.of(a, 0, 0, d)

    @staticmethod
    def swap() -> "RationalMat":
        return RationalMat(0, 1, 1, 0)

    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    def height(self) -> int:
        return abs(self.det())

    def entries(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    def __mul__(self, other: "RationalMat") -> "RationalMat":
        return RationalMat.of(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def __pow__(self, k: int) -> "RationalMat":
        if k < 0:
            return self.inverse() ** (-k)
        out = RationalMat.identity()
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def inverse(self) -> "RationalMat":
        # adjugate = det * M^-1, same projective class
        return RationalMat.of(self.d, -self.b, -self.c, self.a)

    def is_unimodular(self) -> bool:
        return self.height() == 1

    def proj_eq(self, other: "RationalMat") -> bool:
        return self.entries() == other.entries() or self.entries() == tuple(
            -x for x in other.entries()
        )


def _reduction_factor(p: int, d: int, q: int) -> int:
    """Largest t with t|p, t|q, t^2|d and t | (d-p^2)/q.

    The last condition keeps the divisibility invariant q | d - p^2 true
    after dividing through, and makes the canonical representative unique.
    """
    m = (d - p * p) // q
    g = math.gcd(math.gcd(p, q), m)
    if g == 1:
        return 1
    t = 1
    for prime, e in factorint(g).items():
        ed = 0
        dd = d
        while dd % prime == 0:
            dd //= prime
            ed += 1
        t *= prime ** min(e, ed // 2)
    return t


def mk_surd(p: int, d: int, q: int) -> Surd:
    """Canonical Surd with value (p + sqrt(d))/q.

    If q does not divide d - p^2 the triple is rescaled by |q| first; the
    result is then reduced by the maximal factor that keeps all invariants.
    """
    if d <= 0 or is_square(d):
        raise InvalidRadicand(f"radicand {d} must be positive and non-square")
    if q == 0:
        raise ZeroDenominator("denominator is zero")
    if (d - p * p) % q != 0:
        s = abs(q)
        p, d, q = p * s, d * s * s, q * s
    t = _reduction_factor(p, d, q)
    if t > 1:
        p, d, q = p // t, d // (t * t), q // t
    s = Surd(p, d, q)
    if __debug__:
        validate(s)
    return s


def validate(s: Surd) -> None:
    """Assert the representation invariants (used by tests and debug paths)."""
    assert s.rad_d > 0 and not is_square(s.rad_d), "radicand not a non-square"
    assert s.den_q != 0, "zero denominator"
    assert (s.rad_d - s.num_p * s.num_p) % s.den_q == 0, "divisibility broken"
    assert _reduction_factor(s.num_p, s.rad_d, s.den_q) == 1, "not canonical"


def floor_of(s: Surd) -> int:
    """Exact floor of the value, via the integer square root of the radicand."""
    r = math.isqrt(s.rad_d)
    if s.den_q > 0:
        return (s.num_p + r) // s.den_q
    return (s.num_p + r + 1) // s.den_q


def conj(s: Surd) -> Surd:
    """Galois conjugate (p - sqrt(d))/q, stored as (-p + sqrt(d))/(-q)."""
    return Surd(-s.num_p, s.rad_d, -s.den_q)


def gauss_step(s: Surd) -> tuple[int, Surd]:
    """One step of the Gauss map on a value in (0,1).

    Returns (digit, next) with digit = floor(1/s) and next = 1/s - digit.
    Integer-only: for s = (P+sqrt(D))/Q put Q1 = (D-P^2)/Q, then
    1/s = (-P+sqrt(D))/Q1, and the fractional part shifts P by digit*Q1.
    The radicand never changes, which is what makes orbit states hashable
    against a fixed key.
    """
    if floor_of(s) != 0:
        raise OutOfRange(f"{s} is not in (0,1)")
    p, d, q = s.num_p, s.rad_d, s.den_q
    q1 = (d - p * p) // q
    recip = Surd(-p, d, q1)
    digit = floor_of(recip)
    nxt = Surd(-p - digit * q1, d, q1)
    if __debug__:
        assert digit >= 1
        validate(nxt)
    return digit, nxt


def moebius(m: RationalMat, s: Surd) -> Surd:
    """(a*s + b)/(c*s + d) as a canonical Surd.

    Rationalizing gives (P1 + v*sqrt(D))/Q1 with v = Q*det(m); the factor v
    is absorbed into the radicand (D -> v^2 D) and the result re-reduced.
    """
    p, d, q = s.num_p, s.rad_d, s.den_q
    n1 = m.a * p + m.b * q
    n2 = m.a
    d1 = m.c * p + m.d * q
    d2 = m.c
    p1 = n1 * d1 - n2 * d2 * d
    v = q * m.det()
    q1 = d1 * d1 - d2 * d2 * d
    if v < 0:
        p1, v, q1 = -p1, -v, -q1
    return mk_surd(p1, v * v * d, q1)


def is_reduced(s: Surd) -> bool:
    """True iff value > 1 and the Galois conjugate lies in (-1, 0)."""
    return floor_of(s) >= 1 and floor_of(conj(s)) == -1


def eval_hp(s: Surd, bits: int) -> Fraction:
    """Rational approximation with relative error at most 2^(1-bits)."""
    guard = max((s.rad_d.bit_length() + 1) // 2, abs(s.num_p).bit_length()) + 4
    w = bits + guard
    num = (s.num_p << w) + sqrt_scaled(s.rad_d, w)
    return Fraction(num, s.den_q << w)
