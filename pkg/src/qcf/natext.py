"""Invertible extension of the Gauss map on D = {(y,z): 0<y<1, 0<z<1/(1+y)}.

One step sends (y, z) to (1/y - floor(1/y), y(1-yz)) and flips a side tag;
normalized Lebesgue measure on D is invariant and its first-coordinate
marginal is the Gauss-Kuzmin law.  Over the cycle of a quadratic
irrational the canonical second coordinate is 1/(y - conj(y)), the
tagged orbit closes after j*|period| steps (j = 2 when the period length
is odd, else 1), and t_alpha/(j*|period|) estimates the universal
length-per-orbit-point constant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np
from scipy.stats import chi2 as _chi2

from ._intmath import LN2, is_square
from .cfe import PeriodicCF, expand
from .errors import InsufficientData, OutOfDomain
from .field import GeodesicData, geodesic_data
from .qelem import QuadElt
from .surd import Surd, conj, gauss_step, mk_surd

Coord = Union[Surd, float]


@dataclass(frozen=True)
class NatPoint:
    """Point of D with a side tag; coordinates are exact Surds or floats."""

    y: Coord
    z: Coord
    sign: int

    def is_exact(self) -> bool:
        return isinstance(self.y, Surd)


@dataclass(frozen=True)
class MCCheckResult:
    chi2: float
    dof: int
    pvalue: float
    marginal_max_sigma: float
    marginal_ok: bool


def _as_elt(c: Coord, d: int) -> QuadElt:
    assert isinstance(c, Surd)
    return QuadElt.from_surd(c).rescale(d)


def _in_domain_exact(y: QuadElt, z: QuadElt) -> bool:
    return (
        y.sign() > 0
        and (1 - y).sign() > 0
        and z.sign() > 0
        and (1 - z * (1 + y)).sign() > 0
    )


def sbar(pt: NatPoint) -> NatPoint:
    """One invertible-extension step; the side tag flips every time."""
    if pt.is_exact():
        y_s: Surd = pt.y  # type: ignore[assignment]
        d = y_s.rad_d
        y = QuadElt.from_surd(y_s)
        z = _as_elt(pt.z, d)
        if not _in_domain_exact(y, z):
            raise OutOfDomain(f"({pt.y}, {pt.z}) is not interior to D")
        _, y_next = gauss_step(y_s)
        z_next = y * (1 - y * z)
        return NatPoint(y=y_next, z=z_next.to_surd(), sign=-pt.sign)
    y = float(pt.y)
    z = float(pt.z)
    if not (0.0 < y < 1.0 and 0.0 < z < 1.0 / (1.0 + y)):
        raise OutOfDomain(f"({y}, {z}) is not interior to D")
    inv = 1.0 / y
    return NatPoint(y=inv - math.floor(inv), z=y * (1.0 - y * z), sign=-pt.sign)


def periodic_point(cf: PeriodicCF) -> NatPoint:
    """The canonical lift of the cycle start: z = 1/(y - conj(y))."""
    y = cf.tail
    diff = QuadElt.from_surd(y) - QuadElt.from_surd(conj(y))
    z = diff.inverse()
    return NatPoint(y=y, z=z.to_surd(), sign=+1)


def natext_period(cf: PeriodicCF) -> tuple[int, int]:
    """(tagged period, j) for the lifted cycle; j is 2 for odd |period|, else 1.

    The parity rule is verified independently by iterating the tagged map
    until the exact state (y, z, sign) recurs.
    """
    ell = len(cf.period)
    j = 1 if ell % 2 == 0 else 2
    pbar = j * ell
    start = periodic_point(cf)
    pt = start
    steps = 0
    for _ in range(pbar):
        pt = sbar(pt)
        steps += 1
        if pt == start:
            break
    assert steps == pbar and pt == start, "tagged cycle length disagrees with parity rule"
    return pbar, j


def c_alpha(cf: PeriodicCF, geo: GeodesicData) -> float:
    """Orbit length per tagged orbit point: t_alpha / (j * |period|)."""
    _, j = natext_period(cf)
    return geo.t_alpha / (j * len(cf.period))


def c_alpha_rows(ds: Sequence[int], min_period: int, max_steps: int = 1_000_000):
    """(d, period_len, j, t_alpha, c_alpha) for each usable d in ds."""
    rows = []
    for d in ds:
        if d <= 1 or is_square(d):
            continue
        cf = expand(mk_surd(0, d, 1), max_steps=max_steps)
        if len(cf.period) < min_period:
            continue
        geo = geodesic_data(mk_surd(0, d, 1))
        ell = len(cf.period)
        j = 1 if ell % 2 == 0 else 2
        rows.append((d, ell, j, geo.t_alpha, geo.t_alpha / (j * ell)))
    return rows


def estimate_c0(ds: Sequence[int], min_period: int) -> tuple[float, float]:
    """Period-length-weighted mean of c_alpha over alpha = sqrt(d), with the
    relative spread (max deviation over the mean)."""
    rows = c_alpha_rows(ds, min_period)
    if not rows:
        raise InsufficientData(f"no d with period >= {min_period}")
    weight = sum(r[1] for r in rows)
    est = sum(r[1] * r[4] for r in rows) / weight
    spread = max(abs(r[4] - est) for r in rows) / est
    return est, spread


def _cell_expected(y0: float, y1: float, z0: float, z1: float) -> float:
    """Lebesgue area of [y0,y1]x[z0,z1] intersected with D (not normalized)."""
    # the cap curve is z = 1/(1+y), decreasing; split [y0,y1] at the points
    # where the curve crosses z1 and z0
    def crossing(z: float) -> float:
        return 1.0 / z - 1.0 if z > 0 else float("inf")

    lo = y0
    hi = y1
    a = min(max(crossing(z1), lo), hi)  # curve >= z1 on [lo, a]
    b = min(max(crossing(z0), lo), hi)  # curve > z0 on [lo, b]
    area = (a - lo) * (z1 - z0)
    if b > a:
        area += math.log((1.0 + b) / (1.0 + a)) - z0 * (b - a)
    return area


def lebesgue_mc_check(n_samples: int, n_steps: int, bins: int, seed: int) -> MCCheckResult:
    """Push samples of the invariant measure through the map and chi-square
    the joint histogram against uniform-on-D; also check the Gauss-Kuzmin
    marginal bin by bin at the 3-sigma level."""
    rng = np.random.default_rng(seed)
    u = rng.random(n_samples)
    v = rng.random(n_samples)
    y = np.exp2(u) - 1.0  # first coordinate has the Gauss-Kuzmin law
    z = v / (1.0 + y)
    for _ in range(n_steps):
        inv = 1.0 / y
        y_next = inv - np.floor(inv)
        # guard against float round-down at the boundary
        np.clip(y_next, 1e-300, np.nextafter(1.0, 0.0), out=y_next)
        z = y * (1.0 - y * z)
        y = y_next

    edges = np.linspace(0.0, 1.0, bins + 1)
    obs, _, _ = np.histogram2d(y, z, bins=[edges, edges])
    expected = np.zeros((bins, bins))
    for i in range(bins):
        for k in range(bins):
            expected[i, k] = _cell_expected(edges[i], edges[i + 1], edges[k], edges[k + 1])
    expected *= n_samples / LN2
    mask = expected > 0.5
    stat = float(((obs[mask] - expected[mask]) ** 2 / expected[mask]).sum())
    dof = int(mask.sum()) - 1
    pvalue = float(_chi2.sf(stat, dof))

    marg_obs, _ = np.histogram(y, bins=edges)
    pbin = np.log2(1.0 + edges[1:]) - np.log2(1.0 + edges[:-1])
    marg_exp = n_samples * pbin
    sigma = np.sqrt(n_samples * pbin * (1.0 - pbin))
    dev = np.abs(marg_obs - marg_exp) / sigma
    return MCCheckResult(
        chi2=stat,
        dof=dof,
        pvalue=pvalue,
        marginal_max_sigma=float(dev.max()),
        marginal_ok=bool((dev <= 3.0).all()),
    )
