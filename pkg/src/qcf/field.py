"""Real quadratic fields: fundamental units, Pell data, and closed-orbit lengths.

The fundamental unit comes from the continued fraction of the integral
basis generator: the period-word matrix is the matrix of multiplication by
the smallest unit > 1 stabilizing the corresponding module, so its
coordinates fall straight out of the convergents.  Per quadratic
irrational alpha we then find the smallest power of the totally positive
fundamental unit whose multiplication matrix in the basis (alpha, 1) is
integral; that matrix generates the stabilizer of alpha and its power
index scales the base orbit length t0.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from ._intmath import factorint, is_square, kronecker, log_quadratic, squarefree_kernel
from .cfe import PeriodicCF, expand, reciprocal_tail, word_matrix
from .errors import InvalidField, OrderBudgetExceeded
from .qelem import QuadElt
from .surd import RationalMat, Surd, mk_surd

__all__ = [
    "FieldData",
    "GeodesicData",
    "SplitType",
    "field_data",
    "order_of",
    "geodesic_data",
    "split_type",
    "is_S_split",
    "unit_action_matrix",
]


class SplitType(enum.Enum):
    SPLIT = "split"
    INERT = "inert"
    RAMIFIED = "ramified"


@dataclass(frozen=True)
class FieldData:
    """Invariants of Q(sqrt(d)) for squarefree d > 1.

    eps and eps_plus are coordinate pairs over the integral basis (1, w)
    with w = sqrt(d) or (1+sqrt(d))/2; eps_plus is the totally positive
    fundamental unit (eps squared when eps has norm -1) and
    t0 = 2 log(eps_plus) is the base closed-orbit length.
    """

    d: int
    disc: int
    eps: tuple[int, int]
    eps_norm: int
    eps_plus: tuple[int, int]
    t0: float
    neg_pell: Optional[tuple[int, int]]

    def basis_gen_is_half(self) -> bool:
        return self.d % 4 == 1

    def coords_xy(self, pair: tuple[int, int]) -> tuple[Fraction, Fraction]:
        """Coordinates (x, y) with value x + y*sqrt(d)."""
        a, b = pair
        if self.basis_gen_is_half():
            return Fraction(2 * a + b, 2), Fraction(b, 2)
        return Fraction(a), Fraction(b)

    def eps_plus_elt(self) -> QuadElt:
        x, y = self.coords_xy(self.eps_plus)
        return QuadElt(x, y, self.d)


@dataclass(frozen=True)
class GeodesicData:
    """Stabilizer data of the module Z + Z*alpha.

    gamma_alpha is integral with determinant 1 and fixes alpha as a Moebius
    map; k_alpha is the least power of the field's totally positive
    fundamental unit that stabilizes the module, so t_alpha = k_alpha * t0.
    """

    alpha: Surd
    conductor: int
    gamma_alpha: RationalMat
    k_alpha: int
    t_alpha: float


def _unit_from_cf(cf: PeriodicCF) -> QuadElt:
    """Smallest unit > 1 stabilizing Z + Z*beta for the reduced tail beta."""
    beta = reciprocal_tail(cf)
    m = word_matrix(cf.period)
    # m * (beta, 1)^T = unit * (beta, 1)^T, so unit = c*beta + d
    b = QuadElt.from_surd(beta)
    return b * m.c + m.d


@lru_cache(maxsize=None)
def field_data(d: int) -> FieldData:
    """Fundamental unit, totally positive unit, t0 and negative-Pell data."""
    if d <= 1 or is_square(d) or d != squarefree_kernel(d):
        raise InvalidField(f"{d} is not squarefree > 1")
    half = d % 4 == 1
    gen = mk_surd(1, d, 2) if half else mk_surd(0, d, 1)
    cf_gen = expand(gen)
    eps_elt = _unit_from_cf(cf_gen)
    norm = eps_elt.norm()
    assert norm in (1, -1)
    assert norm == (1 if len(cf_gen.period) % 2 == 0 else -1)
    eps_plus_elt = eps_elt * eps_elt if norm == -1 else eps_elt

    def to_basis(e: QuadElt) -> tuple[int, int]:
        x, y = e.a, e.b
        if half:
            bcoord, acoord = 2 * y, x - y
        else:
            bcoord, acoord = y, x
        assert acoord.denominator == 1 and bcoord.denominator == 1
        return int(acoord), int(bcoord)

    neg_pell = None
    cf_rad = cf_gen if not half else expand(mk_surd(0, d, 1))
    if len(cf_rad.period) % 2 == 1:
        u = _unit_from_cf(cf_rad)  # fundamental automorph of Z[sqrt d]
        x, y = int(u.a), int(u.b)
        assert x * x - d * y * y == -1
        neg_pell = (x, y)
    assert (neg_pell is not None) == (len(cf_gen.period) % 2 == 1)

    t0 = 2.0 * log_quadratic(eps_plus_elt.a, eps_plus_elt.b, d)
    return FieldData(
        d=d,
        disc=d if half else 4 * d,
        eps=to_basis(eps_elt),
        eps_norm=int(norm),
        eps_plus=to_basis(eps_plus_elt),
        t0=t0,
        neg_pell=neg_pell,
    )


def order_of(alpha: Surd) -> tuple[int, int]:
    """(conductor f, discriminant) of the multiplier order of Z + Z*alpha."""
    p, d, q = alpha.num_p, alpha.rad_d, alpha.den_q
    a, b, c = q * q, -2 * p * q, p * p - d
    g = math.gcd(math.gcd(a, b), c)
    a, b, c = a // g, b // g, c // g
    order_disc = b * b - 4 * a * c
    d0 = squarefree_kernel(d)
    disc_k = d0 if d0 % 4 == 1 else 4 * d0
    f2, rem = divmod(order_disc, disc_k)
    assert rem == 0 and is_square(f2)
    return math.isqrt(f2), order_disc


def unit_action_matrix(alpha: Surd, fd: FieldData | None = None) -> RationalMat:
    """Matrix of multiplication by the totally positive fundamental unit
    in the basis (alpha, 1); rational in general, integral iff the unit
    stabilizes Z + Z*alpha."""
    d0 = squarefree_kernel(alpha.rad_d)
    if fd is None:
        fd = field_data(d0)
    x, y = fd.coords_xy(fd.eps_plus)
    return _mult_matrix_raw(alpha, x, y, d0)


def _mult_matrix_entries(alpha: Surd, x: Fraction, y: Fraction, d0: int):
    """Entries of multiplication by x + y*sqrt(d0) in the basis (alpha, 1)."""
    p, dd, q = alpha.num_p, alpha.rad_d, alpha.den_q
    s = math.isqrt(dd // d0)
    vh = y / s  # multiplier = x + vh*sqrt(dd)
    m = (dd - p * p) // q
    return (x + vh * p, vh * m, vh * q, x - vh * p)


def _mult_matrix_raw(alpha: Surd, x: Fraction, y: Fraction, d0: int) -> RationalMat:
    return RationalMat.from_rationals(*_mult_matrix_entries(alpha, x, y, d0))


def _qpow(w: QuadElt, j: int) -> QuadElt:
    out = QuadElt.make(1, 0, w.d)
    base = w
    while j:
        if j & 1:
            out = out * base
        base = base * base
        j >>= 1
    return out


def geodesic_data(alpha: Surd, budget: int = 10_000_000) -> GeodesicData:
    """Stabilizer matrix and closed-orbit length attached to alpha.

    Scans powers of the totally positive fundamental unit until the
    multiplication matrix in the basis (alpha, 1) becomes integral.  The
    scan runs on integral-basis unit coordinates reduced mod 2s (where
    s^2 = rad_d / d0), so cost per power does not grow; the winning matrix
    is rebuilt exactly and the eigen-identity rechecked symbolically.
    """
    d0 = squarefree_kernel(alpha.rad_d)
    fd = field_data(d0)
    f, _ = order_of(alpha)
    half = fd.basis_gen_is_half()
    a1, b1 = fd.eps_plus  # eps_plus = a1 + b1 * w0, integer coordinates
    w0sq = (d0 - 1) // 4 if half else d0  # w0^2 = w0sq (+ w0 in the half case)

    p, dd, q = alpha.num_p, alpha.rad_d, alpha.den_q
    s = math.isqrt(dd // d0)
    m = (dd - p * p) // q
    mod = 2 * s

    def integral(a: int, b: int) -> bool:
        # entries are (X s +/- Y p)/(2s), Y m/(2s), Y q/(2s) with
        # X = 2a + b, Y = b (half case) or X = 2a, Y = 2b
        if half:
            xs, y = (b % 2) * s, b
        else:
            xs, y = 0, 2 * b
        return (
            (xs + y * p) % mod == 0
            and (xs - y * p) % mod == 0
            and (y * m) % mod == 0
            and (y * q) % mod == 0
        )

    aj, bj = a1 % mod, b1 % mod
    j = 1
    while j <= budget:
        if integral(aj, bj):
            break
        if half:
            aj, bj = (aj * a1 + bj * b1 * w0sq) % mod, (aj * b1 + bj * a1 + bj * b1) % mod
        else:
            aj, bj = (aj * a1 + bj * b1 * w0sq) % mod, (aj * b1 + bj * a1) % mod
        j += 1
    else:
        raise OrderBudgetExceeded(f"no integral unit power within {budget}")

    wj = _qpow(fd.eps_plus_elt(), j)
    gamma = _mult_matrix_raw(alpha, wj.a, wj.b, d0)
    entries = _mult_matrix_entries(alpha, wj.a, wj.b, d0)
    assert all(e.denominator == 1 for e in entries)
    assert abs(gamma.det()) == 1
    if __debug__:
        _check_eigen_identity(gamma, alpha, wj, d0)
    t_alpha = j * fd.t0
    return GeodesicData(alpha=alpha, conductor=f, gamma_alpha=gamma, k_alpha=j, t_alpha=t_alpha)


def _check_eigen_identity(gamma: RationalMat, alpha: Surd, unit: QuadElt, d0: int) -> None:
    """gamma * (alpha, 1)^T = (unit*alpha, unit)^T, checked in the field."""
    a = QuadElt.from_surd(alpha).rescale(d0)
    top = a * gamma.a + gamma.b
    bot = a * gamma.c + gamma.d
    assert bot == unit, "unit row mismatch"
    assert top == unit * a, "alpha row mismatch"


def split_type(d: int, p: int) -> SplitType:
    """Factorization type of the prime p in Q(sqrt(d))."""
    d0 = squarefree_kernel(d)
    disc = d0 if d0 % 4 == 1 else 4 * d0
    sym = kronecker(disc, p)
    if sym == 0:
        return SplitType.RAMIFIED
    return SplitType.SPLIT if sym == 1 else SplitType.INERT


def is_S_split(alpha: Surd, S) -> bool:
    """True iff some prime of S splits in the field of alpha."""
    d0 = squarefree_kernel(alpha.rad_d)
    return any(split_type(d0, p) is SplitType.SPLIT for p in S)


def prime_factors(n: int) -> list[int]:
    return sorted(factorint(n))
