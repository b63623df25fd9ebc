"""Continued fractions of quadratic irrationals, exactly.

Period detection is a dict lookup on canonical orbit states, so the split
into preperiod and period is exact and the period word is automatically
minimal with its natural phase (first recurring state).  Cylinder sets,
pattern frequencies and the discrete orbit measure live here too.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from ._intmath import LN2
from .errors import InvalidPattern, PeriodTooLong
from .surd import RationalMat, Surd, eval_hp, floor_of, gauss_step, mk_surd, moebius

Word = tuple[int, ...]


@dataclass(frozen=True)
class PeriodicCF:
    """Expansion a0 + [0; preperiod, period, period, ...] of `source`."""

    a0: int
    preperiod: Word
    period: Word
    source: Surd
    tail: Surd  # first recurring orbit state; starts the periodic cycle

    def period_length(self) -> int:
        return len(self.period)

    def digits(self, n: int) -> list[int]:
        """First n digits a_1..a_n (preperiod then unrolled period)."""
        out = list(self.preperiod)
        while len(out) < n:
            out.extend(self.period)
        return out[:n]

    def to_json_dict(self) -> dict:
        return {"a0": self.a0, "pre": list(self.preperiod), "per": list(self.period)}


@dataclass(frozen=True)
class Cylinder:
    """Interval of x in (0,1) whose expansion starts with `word`."""

    word: Word
    lo: Fraction
    hi: Fraction
    length: Fraction
    gauss_mass: float


def _continuants(word: Sequence[int]) -> tuple[int, int, int, int]:
    """(p_k, p_{k-1}, q_k, q_{k-1}) for [0; w1..wk]."""
    p1, p0 = 1, 0  # p_{-1}, p_0
    q1, q0 = 0, 1
    for a in word:
        p1, p0 = p0, a * p0 + p1
        q1, q0 = q0, a * q0 + q1
    return p0, p1, q0, q1


def word_matrix(word: Sequence[int]) -> RationalMat:
    """Product of the digit matrices [[a,1],[1,0]]; fixes the periodic tail."""
    m = RationalMat.identity()
    for a in word:
        m = m * RationalMat(a, 1, 1, 0)
    return m


def expand(s: Surd, max_steps: int = 1_000_000) -> PeriodicCF:
    """Run the Gauss map until the orbit state repeats.

    Raises PeriodTooLong if the cycle was not closed within max_steps; that
    is a budget diagnostic, any quadratic irrational closes eventually.
    """
    a0 = floor_of(s)
    x = mk_surd(s.num_p - a0 * s.den_q, s.rad_d, s.den_q)
    seen: dict[Surd, int] = {x: 0}
    states = [x]
    digits: list[int] = []
    for _ in range(max_steps):
        a, x = gauss_step(x)
        digits.append(a)
        if x in seen:
            m = seen[x]
            cf = PeriodicCF(
                a0=a0,
                preperiod=tuple(digits[:m]),
                period=tuple(digits[m:]),
                source=s,
                tail=states[m],
            )
            if __debug__:
                _check_minimal_period(cf.period)
                # continuant entries grow linearly in bits with the word, so
                # the symbolic fixed-point check is capped; the test suite
                # exercises it exactly on its own samples
                if len(cf.period) <= 600:
                    _check_reconstruction(cf)
            return cf
        seen[x] = len(digits)
        states.append(x)
    raise PeriodTooLong(f"no repeat within {max_steps} steps")


def _check_minimal_period(word: Word) -> None:
    n = len(word)
    for ell in range(1, n):
        if n % ell == 0 and word == word[ell:] + word[:ell]:
            raise AssertionError(f"period {word} has sub-period {ell}")


def _check_reconstruction(cf: PeriodicCF) -> None:
    # the period-word matrix must fix the reduced surd 1/tail whose digit
    # stream is the period repeated
    m = word_matrix(cf.period)
    b = reciprocal_tail(cf)
    assert moebius(m, b) == b, "period word does not fix its tail"


def reciprocal_tail(cf: PeriodicCF) -> Surd:
    """The reduced surd [per1; per2, ...] = 1/tail, fixed by word_matrix(period)."""
    t = cf.tail
    q1 = (t.rad_d - t.num_p * t.num_p) // t.den_q
    return mk_surd(-t.num_p, t.rad_d, q1)


def period_points(cf: PeriodicCF) -> list[Surd]:
    """The |period| distinct orbit states in (0,1), in cycle order."""
    pts = [cf.tail]
    x = cf.tail
    for _ in range(len(cf.period) - 1):
        _, x = gauss_step(x)
        pts.append(x)
    if __debug__:
        _, back = gauss_step(x)
        assert back == cf.tail, "cycle does not close"
    return pts


def cylinder(w: Sequence[int]) -> Cylinder:
    """Cylinder interval of the pattern w, with its Gauss-Kuzmin mass."""
    w = tuple(w)
    if not w or any(a < 1 for a in w):
        raise InvalidPattern(f"pattern must be nonempty positive digits: {w!r}")
    pk, pk1, qk, qk1 = _continuants(w)
    end1 = Fraction(pk, qk)
    end2 = Fraction(pk + pk1, qk + qk1)
    lo, hi = (end1, end2) if end1 < end2 else (end2, end1)
    length = hi - lo
    assert length == Fraction(1, qk * (qk + qk1))
    mass = (math.log1p(float(hi)) - math.log1p(float(lo))) / LN2
    return Cylinder(word=w, lo=lo, hi=hi, length=length, gauss_mass=mass)


def _cyclic_count(period: Word, w: Word) -> int:
    n = len(period)
    hits = 0
    for i in range(n):
        if all(period[(i + j) % n] == w[j] for j in range(len(w))):
            hits += 1
    return hits


def _surd_in_interval(x: Surd, lo: Fraction, hi: Fraction) -> bool:
    # exact comparison against rational endpoints; x is irrational so the
    # endpoints are never hit
    def cmp_frac(frac: Fraction) -> int:
        p, d, q = x.num_p, x.rad_d, x.den_q
        a, b = frac.numerator, frac.denominator  # b > 0
        # x - a/b has the sign of (b p - a q) + b sqrt(d), divided by b q
        lin = b * p - a * q
        if lin >= 0:
            diff_sign = 1
        else:
            diff_sign = 1 if lin * lin < b * b * d else -1
        return diff_sign if q > 0 else -diff_sign

    return cmp_frac(lo) > 0 and cmp_frac(hi) < 0


def pattern_freq(cf: PeriodicCF, w: Sequence[int]) -> Fraction:
    """Asymptotic frequency of the pattern w in the digits of cf.

    Computed as the cyclic occurrence count in the period word over the
    period length.  In debug mode the geometric route (how many orbit
    points fall in the cylinder of w) is computed too and must agree.
    """
    w = tuple(w)
    if not w or any(a < 1 for a in w):
        raise InvalidPattern(f"pattern must be nonempty positive digits: {w!r}")
    count = _cyclic_count(cf.period, w)
    freq = Fraction(count, len(cf.period))
    if __debug__ and len(cf.period) <= 1000:
        cyl = cylinder(w)
        geo = sum(1 for x in period_points(cf) if _surd_in_interval(x, cyl.lo, cyl.hi))
        assert Fraction(geo, len(cf.period)) == freq, (cf.period, w)
    return freq


def nu_discrepancy(cf: PeriodicCF, bits: int = 256) -> float:
    """max_i |F(x_i) - F_Gauss(x_i)| over the orbit points.

    F is the right-continuous empirical CDF of the period points and
    F_Gauss(t) = log(1+t)/log 2; the maximum deviation of the step function
    against the smooth CDF occurs at the orbit points themselves.
    """
    pts = sorted(float(eval_hp(x, bits)) for x in period_points(cf))
    n = len(pts)
    worst = 0.0
    for i, t in enumerate(pts):
        fg = math.log1p(t) / LN2
        worst = max(worst, abs((i + 1) / n - fg))
    return worst


def nu_integrate(cf: PeriodicCF, f: Callable[[float], float], bits: int = 256) -> float:
    """Average of f over the period points (integral against the orbit measure)."""
    pts = period_points(cf)
    return sum(f(float(eval_hp(x, bits))) for x in pts) / len(pts)
