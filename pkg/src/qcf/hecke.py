"""Sphere enumeration, height decompositions, branch membership, and the
negative-Pell degenerate sequences.

Index-h primitive sublattices of Z^2 are enumerated by Hermite forms
[[a,b],[0,e]] with ae = h, 0 <= b < e and content 1.  A matrix of height h
factors as u1 * diag(h,1) * u2 with unimodular u's; two matrices of equal
height walk the same branch down to depth h exactly when the lower-left
entry of u2' * u2^{-1} vanishes mod h.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InvalidRadius, NoNegativePell
from .field import field_data
from .surd import RationalMat, Surd, mk_surd

__all__ = [
    "SphereRep",
    "DegeneratePoint",
    "sphere_reps",
    "decompose",
    "same_branch_at_depth",
    "degenerate_sequence",
]


@dataclass(frozen=True)
class SphereRep:
    """Hermite representative [[a,b],[0,e]] of an index-h primitive sublattice."""

    mat: RationalMat

    @property
    def a(self) -> int:
        return self.mat.a

    @property
    def b(self) -> int:
        return self.mat.b

    @property
    def e(self) -> int:
        return self.mat.d

    def height(self) -> int:
        return self.mat.height()


@dataclass(frozen=True)
class DegeneratePoint:
    """j-th odd unit power: eps^(2j-1) = k + n*sqrt(d), alpha = k + n*sqrt(d)."""

    j: int
    k: int
    n: int
    alpha: Surd


def sphere_reps(h: int) -> list[SphereRep]:
    """All index-h primitive sublattices in Hermite form; count h*prod(1+1/p)."""
    if h < 1:
        raise InvalidRadius(f"radius must be >= 1, got {h}")
    reps = []
    for a in range(1, h + 1):
        if h % a:
            continue
        e = h // a
        for b in range(e):
            if math.gcd(math.gcd(a, b), e) == 1:
                reps.append(SphereRep(RationalMat(a, b, 0, e)))
    return reps


def _split_offdiag(g: RationalMat):
    return [[g.a, g.b], [g.c, g.d]]


def decompose(g: RationalMat) -> tuple[RationalMat, int, RationalMat]:
    """Write g = u1 * diag(h,1) * u2 with unimodular u1, u2 and h = height(g).

    Content 1 forces elementary divisors (h, 1); standard 2x2 Smith
    elimination with extended-gcd row and column operations, deterministic.
    """
    ident = RationalMat.identity()
    if g.b == 0 and g.c == 0 and g.a > 0 and g.d == 1:
        return ident, g.a, ident
    if g.b == 0 and g.c == 0 and g.a == 1 and g.d > 0:
        return RationalMat.swap(), g.d, RationalMat.swap()
    a = _split_offdiag(g)
    u = [[1, 0], [0, 1]]  # accumulates row ops:  u * g_original = a
    v = [[1, 0], [0, 1]]  # accumulates col ops:  a = g_original-after, g = u^-1 a v^-1

    def row_reduce():
        # make a[0][0] = gcd(a[0][0], a[1][0]) and kill a[1][0]
        x, y = a[0][0], a[1][0]
        if y == 0:
            return
        gg = math.gcd(x, y)
        s, t = _ext_gcd(x, y, gg)
        r0 = [s * a[0][0] + t * a[1][0], s * a[0][1] + t * a[1][1]]
        r1 = [-(y // gg) * a[0][0] + (x // gg) * a[1][0],
              -(y // gg) * a[0][1] + (x // gg) * a[1][1]]
        a[0], a[1] = r0, r1
        u0 = [s * u[0][0] + t * u[1][0], s * u[0][1] + t * u[1][1]]
        u1 = [-(y // gg) * u[0][0] + (x // gg) * u[1][0],
              -(y // gg) * u[0][1] + (x // gg) * u[1][1]]
        u[0], u[1] = u0, u1

    def col_reduce():
        x, y = a[0][0], a[0][1]
        if y == 0:
            return
        gg = math.gcd(x, y)
        s, t = _ext_gcd(x, y, gg)
        c0 = [s * a[0][0] + t * a[0][1], s * a[1][0] + t * a[1][1]]
        c1 = [-(y // gg) * a[0][0] + (x // gg) * a[0][1],
              -(y // gg) * a[1][0] + (x // gg) * a[1][1]]
        a[0][0], a[1][0] = c0
        a[0][1], a[1][1] = c1
        v0 = [s * v[0][0] + t * v[0][1], s * v[1][0] + t * v[1][1]]
        v1 = [-(y // gg) * v[0][0] + (x // gg) * v[0][1],
              -(y // gg) * v[1][0] + (x // gg) * v[1][1]]
        v[0][0], v[1][0] = v0
        v[0][1], v[1][1] = v1

    while True:
        while a[1][0] != 0 or a[0][1] != 0:
            row_reduce()
            col_reduce()
        if abs(a[0][0]) == 1:
            break
        # diagonal but top-left not a unit: content 1 means gcd(a00, a11) = 1,
        # so mixing the second column in and reducing again lands a unit there
        a[1][0] += a[1][1]
        v[0][0] += v[0][1]
        v[1][0] += v[1][1]
    if a[0][0] < 0:
        a[0][0] = -a[0][0]
        u[0] = [-u[0][0], -u[0][1]]
    if a[1][1] < 0:
        a[1][1] = -a[1][1]
        u[1] = [-u[1][0], -u[1][1]]
    h = a[1][1]
    assert a[0][0] == 1 and h == g.height()

    # g = u^-1 * diag(1,h) * v^-1 and diag(1,h) = S diag(h,1) S
    ui = _inv2(u)
    vi = _inv2(v)
    s_mat = [[0, 1], [1, 0]]
    u1 = _mat2(_mul2(ui, s_mat))
    u2 = _mat2(_mul2(s_mat, vi))
    if __debug__:
        prod = u1 * RationalMat.of(h, 0, 0, 1) * u2
        assert prod.entries() == g.entries(), (prod.entries(), g.entries())
        assert u1.is_unimodular() and u2.is_unimodular()
    return u1, h, u2


def _ext_gcd(x: int, y: int, g: int) -> tuple[int, int]:
    # s*x + t*y = g; when the pivot x already equals +-g, keep it fixed so the
    # elimination makes strict progress (a free Bezout pair can 2-cycle)
    if x != 0 and y % x == 0:
        return (1, 0) if x > 0 else (-1, 0)
    old_r, r = x, y
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        qq = old_r // r
        old_r, r = r, old_r - qq * r
        old_s, s = s, old_s - qq * s
        old_t, t = t, old_t - qq * t
    if old_r == g:
        return old_s, old_t
    assert old_r == -g
    return -old_s, -old_t


def _mul2(x, y):
    return [
        [x[0][0] * y[0][0] + x[0][1] * y[1][0], x[0][0] * y[0][1] + x[0][1] * y[1][1]],
        [x[1][0] * y[0][0] + x[1][1] * y[1][0], x[1][0] * y[0][1] + x[1][1] * y[1][1]],
    ]


def _inv2(x):
    det = x[0][0] * x[1][1] - x[0][1] * x[1][0]
    assert det in (1, -1)
    return [[x[1][1] * det, -x[0][1] * det], [-x[1][0] * det, x[0][0] * det]]


def _mat2(x) -> RationalMat:
    return RationalMat(x[0][0], x[0][1], x[1][0], x[1][1])


def same_branch_at_depth(g1: RationalMat, g2: RationalMat, h: int) -> bool:
    """Do g1 and g2 sit on a common branch down to depth h?

    Tested on the unimodular right factors of the height decompositions:
    lower-left of u2' * u2^{-1} must vanish mod h.  Canonical whenever h
    divides the common height (agreement at h implies agreement at every
    divisor of h).
    """
    _, _, w1 = decompose(g1)
    _, _, w2 = decompose(g2)
    m = w2 * w1.inverse()
    return m.c % h == 0


def degenerate_sequence(d: int, count: int) -> list[DegeneratePoint]:
    """Odd powers of the norm -1 unit: eps^(2j-1) = k_j + n_j sqrt(d).

    Each alpha_j = k_j + n_j*sqrt(d) has purely periodic expansion with the
    single-digit period word [2*k_j], so the orbit measures of n_j*sqrt(d)
    stay atomic while the heights n_j blow up.
    """
    fd = field_data(d)
    if fd.neg_pell is None:
        raise NoNegativePell(f"x^2 - {d} y^2 = -1 has no integer solution")
    x1, y1 = fd.neg_pell
    # eps^2 = (x1^2 + d y1^2) + 2 x1 y1 sqrt(d)
    sq = (x1 * x1 + d * y1 * y1, 2 * x1 * y1)
    out = []
    k, n = x1, y1
    for j in range(1, count + 1):
        assert k * k - d * n * n == -1
        alpha = mk_surd(k, n * n * d, 1)
        out.append(DegeneratePoint(j=j, k=k, n=n, alpha=alpha))
        k, n = k * sq[0] + n * sq[1] * d, k * sq[1] + n * sq[0]
    return out
