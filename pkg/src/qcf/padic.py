"""2x2 p-adic matrix arithmetic mod p^m and the order function k_{p^n}.

k_order(delta, p, n) is the least k with delta^k in the depth-n congruence
set: unit determinant (projectively) and lower-left entry divisible by p^n.
For a matrix of compact type that order grows like a fixed rational times
p^n; the fast path finds the transition point and jumps there, while a
linear-scan oracle stays available for cross-checking.

Structure of the fast path, all of it provable from two facts: the closure
of <delta> is abelian, so "delta^k lands in a subgroup" is a divisibility
condition on k; and once eta = delta^k0 is congruent to the identity mod
p^2, the lower-left valuation of eta^m is exactly v(eta_c) + v_p(m).
Hence with n0 = v_p(lower-left(eta)):

  n <= n0:  k = k1 * min{m <= ord2 : eta1^m has depth n}
  n >  n0:  k = k1 * g * p^(n-n0) with g the least divisor of ord2 that works

where k1 is the least power landing in the maximal compact at p and ord2
the projective order of that power mod p^2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from ._intmath import divisors, factorint, valuation
from .errors import NotCompactType, OrderBudgetExceeded, PrecisionError
from .surd import RationalMat

DEFAULT_GUARD = 4
DEFAULT_BUDGET = 200_000

Entries = tuple[int, int, int, int]


@dataclass(frozen=True)
class PadicMat:
    """p^val * M with M given mod p^prec, at least one entry a p-unit."""

    p: int
    prec: int
    val: int
    entries: Entries

    def __post_init__(self):
        assert self.prec >= 1
        assert any(e % self.p for e in self.entries), "entries share p-content"

    def modulus(self) -> int:
        return self.p**self.prec

    def det(self) -> int:
        a, b, c, d = self.entries
        return (a * d - b * c) % self.modulus()

    def det_is_unit(self) -> bool:
        return self.det() % self.p != 0

    def lower_left_valuation(self) -> tuple[int, bool]:
        """(v, exact): v_p of the lower-left entry; exact=False means only
        'at least prec' is known."""
        c = self.entries[2] % self.modulus()
        if c == 0:
            return self.prec, False
        return valuation(c, self.p), True


def _strip_content(entries: Entries, p: int) -> tuple[int, Entries]:
    v = min(valuation(e, p) for e in entries if e != 0)
    if v:
        entries = tuple(e // p**v for e in entries)  # type: ignore[assignment]
    return v, entries


def pmat_from_rational(mat: RationalMat, p: int, m: int) -> PadicMat:
    """Reduce an integer matrix mod p^m, p-content stripped into val."""
    v, entries = _strip_content(mat.entries(), p)
    mod = p**m
    return PadicMat(p=p, prec=m, val=v, entries=tuple(e % mod for e in entries))


def _mul_entries(x: Entries, y: Entries, mod: int) -> Entries:
    a, b, c, d = x
    e, f, g, h = y
    return (
        (a * e + b * g) % mod,
        (a * f + b * h) % mod,
        (c * e + d * g) % mod,
        (c * f + d * h) % mod,
    )


def pmat_mul(x: PadicMat, y: PadicMat) -> PadicMat:
    assert x.p == y.p
    prec = min(x.prec, y.prec)
    mod = x.p**prec
    ent = _mul_entries(x.entries, y.entries, mod)
    if all(e == 0 for e in ent):
        raise PrecisionError("product vanished at working precision")
    v, ent = _strip_content(ent, x.p)
    if v:
        prec -= v
        if prec < 1:
            raise PrecisionError("content strip consumed all precision")
        mod = x.p**prec
        ent = tuple(e % mod for e in ent)
    return PadicMat(p=x.p, prec=prec, val=x.val + y.val + v, entries=ent)


def pmat_pow(mat: PadicMat, k: int) -> PadicMat:
    """mat^k by square and multiply; k >= 0."""
    if k == 0:
        return PadicMat(p=mat.p, prec=mat.prec, val=0, entries=(1, 0, 0, 1))
    out = None
    base = mat
    while k:
        if k & 1:
            out = base if out is None else pmat_mul(out, base)
        k >>= 1
        if k:
            base = pmat_mul(base, base)
    return out


def in_kpn(mat: PadicMat, n: int, guard: int = DEFAULT_GUARD) -> bool:
    """Membership in the depth-n set: unit determinant and v_p(lower-left) >= n.

    Needs working precision at least n + guard to answer; otherwise raises
    PrecisionError and the caller should rebuild at higher precision.
    """
    if n < 0:
        raise ValueError("depth must be >= 0")
    if not mat.det_is_unit():
        return False
    if n == 0:
        return True
    if mat.prec < n + guard:
        v, exact = mat.lower_left_valuation()
        if not exact or v >= n:
            raise PrecisionError(f"need precision >= {n + guard}, have {mat.prec}")
        return False
    v, exact = mat.lower_left_valuation()
    return v >= n


# -- exact integer helpers for the order engine --------------------------------


def _exact_mul(x: Entries, y: Entries) -> Entries:
    a, b, c, d = x
    e, f, g, h = y
    return (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)


def _exact_pow(x: Entries, k: int) -> Entries:
    out = (1, 0, 0, 1)
    base = x
    while k:
        if k & 1:
            out = _exact_mul(out, base)
        k >>= 1
        if k:
            base = _exact_mul(base, base)
    return out


def _det(e: Entries) -> int:
    return e[0] * e[3] - e[1] * e[2]


def _in_kp_exact(e: Entries, p: int) -> bool:
    """After stripping p-content, is the determinant a p-unit?"""
    _, ent = _strip_content(e, p)
    return valuation(_det(ent), p) == 0


def _first_power_in_kp(entries: Entries, p: int, budget: int) -> tuple[int, Entries]:
    """Least k1 >= 1 with delta^k1 in the maximal compact at p (exact scan)."""
    # necessary for bounded powers: both eigenvalues of the same valuation
    _, stripped = _strip_content(entries, p)
    det_s, tr_s = _det(stripped), stripped[0] + stripped[3]
    if tr_s != 0 and 2 * valuation(tr_s, p) < valuation(det_s, p):
        raise NotCompactType(f"eigenvalue valuations split at p={p}")
    power = entries
    for k in range(1, budget + 1):
        if _in_kp_exact(power, p):
            _, ent = _strip_content(power, p)
            return k, ent
        power = _exact_mul(power, entries)
    raise OrderBudgetExceeded(f"no power within {budget} lies in the maximal compact at p={p}")


def _proj_order_mod_p2(ent: Entries, p: int, budget: int) -> int:
    """Order of a unit-determinant matrix in PGL2(Z/p^2)."""
    mod = p * p

    def is_scalar(e: Entries) -> bool:
        return e[1] % mod == 0 and e[2] % mod == 0 and (e[0] - e[3]) % mod == 0

    cur = tuple(e % mod for e in ent)
    base = cur
    for k in range(1, budget + 1):
        if is_scalar(cur):
            return k
        cur = _mul_entries(cur, base, mod)
    raise OrderBudgetExceeded(f"projective order mod {p}^2 exceeds {budget}")


def _depth_of(ent: Entries, p: int, n: int) -> bool:
    """v_p(lower-left) >= n for a reduced residue matrix."""
    return ent[2] % p**n == 0


def k_order(delta: RationalMat, p: int, n: int, budget: int = DEFAULT_BUDGET) -> int:
    """Least k >= 1 with delta^k of depth n at p (unit det, p^n | lower-left).

    n = 0 asks only for membership in the maximal compact, which is how
    primes dividing the determinant of the representative are handled.
    """
    if n < 0:
        raise ValueError("depth must be >= 0")
    k1, eta1 = _first_power_in_kp(delta.entries(), p, budget)
    if n == 0:
        return k1
    guard = DEFAULT_GUARD
    mod_work = p ** (n + guard)
    eta_red = tuple(e % mod_work for e in eta1)

    ord2 = _proj_order_mod_p2(eta1, p, budget)
    zeta = _exact_pow(eta1, ord2)
    if zeta[1] == 0 and zeta[2] == 0 and zeta[0] == zeta[3]:
        n0 = None  # torsion: zeta is exactly scalar
    elif zeta[2] == 0:
        n0 = None  # upper-triangular power: every depth reached within ord2
    else:
        n0 = valuation(zeta[2], p)

    if n0 is None or n <= n0:
        cur = eta_red
        for m in range(1, ord2 + 1):
            if _depth_of(cur, p, n):
                return k1 * m
            cur = _mul_entries(cur, eta_red, mod_work)
        raise OrderBudgetExceeded("depth scan failed below the transition point")

    # past the transition: k = k1 * g * p^(n - n0), g | ord2
    shift = _pow_mod(eta_red, p ** (n - n0), mod_work)
    for g in divisors(ord2):
        if _depth_of(_pow_mod(shift, g, mod_work), p, n):
            return k1 * g * p ** (n - n0)
    raise OrderBudgetExceeded("no divisor of the base order closed the depth condition")


def _pow_mod(ent: Entries, k: int, mod: int) -> Entries:
    out = (1, 0, 0, 1)
    base = ent
    while k:
        if k & 1:
            out = _mul_entries(out, base, mod)
        base = _mul_entries(base, base, mod)
        k >>= 1
    return out


def k_order_bruteforce(delta: RationalMat, p: int, n: int, budget: int = DEFAULT_BUDGET,
                       guard: int = DEFAULT_GUARD) -> int:
    """Independent oracle: linear scan of powers.

    Runs mod p^(n+guard) when the representative has unit determinant at p,
    exactly otherwise (content stripping would eat modular precision).
    """
    ent = delta.entries()
    v, stripped = _strip_content(ent, p)
    unit_det = valuation(_det(stripped), p) == 0
    if unit_det:
        mod = p ** (n + guard)
        base = tuple(e % mod for e in stripped)
        cur = base
        for k in range(1, budget + 1):
            if cur[2] % p**n == 0:
                return k
            cur = _mul_entries(cur, base, mod)
    else:
        cur = ent
        for k in range(1, budget + 1):
            if _in_kp_exact(cur, p):
                _, red = _strip_content(cur, p)
                if red[2] % p**n == 0:
                    return k
            cur = _exact_mul(cur, ent)
    raise OrderBudgetExceeded(f"oracle scan exhausted after {budget} steps")


def k_order_multi(delta: RationalMat, h: int, S_extra=(), swap_primes=(),
                  budget: int = DEFAULT_BUDGET) -> int:
    """Least k with delta^k of depth v_p(h) at every p | h and in the maximal
    compact at every extra prime.

    swap_primes lists the primes whose depth condition applies to the
    conjugate by [[0,1],[1,0]] (upper-right instead of lower-left entry);
    these are the primes sitting in the denominator of the acting rational.
    """
    if h < 1:
        raise ValueError("h must be >= 1")
    swap = RationalMat.swap()
    k = 1
    seen: set[int] = set()
    for p, e in factorint(h).items():
        seen.add(p)
        dd = swap * delta * swap if p in swap_primes else delta
        kp = k_order(dd, p, e, budget=budget)
        k = k * kp // math.gcd(k, kp)
    for p in S_extra:
        if p in seen:
            continue
        kp = k_order(delta, p, 0, budget=budget)
        k = k * kp // math.gcd(k, kp)
    return k


def e_ratio_trace(delta: RationalMat, p: int, n_max: int,
                  budget: int = DEFAULT_BUDGET) -> tuple[list[Fraction], int]:
    """[k_{p^n}/p^n for n = 1..n_max] and the first n from which it is constant."""
    trace = [Fraction(k_order(delta, p, n, budget=budget), p**n) for n in range(1, n_max + 1)]
    stable_from = n_max
    for i in range(n_max - 1, 0, -1):
        if trace[i - 1] == trace[-1]:
            stable_from = i
        else:
            break
    return trace, stable_from
