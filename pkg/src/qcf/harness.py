"""Experiment driver: frequency and period sweeps along multiplier chains,
the unit-order/p-adic-order cross-check, and bit-stable CSV/JSON emission.

A sweep walks alpha, k*alpha, k^2*alpha, ... and records how pattern
frequencies approach the Gauss-Kuzmin cylinder masses and how the period
length tracks the height.  The cross-check computes the same integer two
ways: the order of the unit stabilizer matrix in the depth-h congruence
sets (p-adic route) and the least unit power stabilizing the scaled module
(field route); the two must agree exactly.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Optional, Sequence

from ._intmath import factorint
from .cfe import PeriodicCF, cylinder, expand, pattern_freq
from .errors import InputError, PeriodTooLong
from .field import field_data, geodesic_data, unit_action_matrix
from .padic import k_order_multi
from .surd import RationalMat, Surd, mk_surd

Word = tuple[int, ...]

DELTA0_REF = Fraction(25, 64)  # best known spectral-gap exponent, reporting only


@dataclass(frozen=True)
class SweepConfig:
    alpha: Surd
    k: Optional[int] = None
    q_chain: tuple[Fraction, ...] = ()
    n_min: int = 0
    n_max: int = 10
    patterns: tuple[Word, ...] = ((1,), (2,))
    prec: int = 256
    max_steps: int = 500_000
    budget: int = 200_000
    seed: int = 0
    csv_path: Optional[str] = None
    json_path: Optional[str] = None
    real_digits: int = 12
    delta0_ref: Fraction = DELTA0_REF

    def multipliers(self) -> list[tuple[int, Fraction]]:
        """(n, q_n) pairs of the chain."""
        if self.q_chain:
            return list(enumerate(self.q_chain))
        if self.k is None:
            raise InputError("need either k or an explicit q chain")
        return [(n, Fraction(self.k) ** n) for n in range(self.n_min, self.n_max + 1)]


@dataclass(frozen=True)
class SweepRow:
    n: int
    h: int
    truncated: bool
    period_len: int
    preperiod_len: int
    t_alpha: Optional[float]
    freqs: dict
    masses: dict
    errors: dict
    pred_mult: Optional[int]
    actual_mult: Optional[int]


@dataclass(frozen=True)
class SweepSummary:
    first_max: float
    last_max: float
    slope: Optional[float]
    ref_slope: float


def ht_of_rational(q: Fraction) -> int:
    """Height of a rational: numerator times denominator of the reduced form."""
    q = Fraction(q)
    if q == 0:
        raise InputError("height of 0 undefined")
    return abs(q.numerator) * q.denominator


def scale_surd(alpha: Surd, q: Fraction) -> Surd:
    """q * alpha as a canonical Surd."""
    q = Fraction(q)
    num, den = q.numerator, q.denominator
    if num == 0:
        raise InputError("scaling by zero leaves the field")
    p, d, qq = alpha.num_p, alpha.rad_d, alpha.den_q
    v = num * den  # coefficient of sqrt(d) after clearing denominators
    if v > 0:
        return mk_surd(p * v, d * v * v, qq * den * den)
    return mk_surd(-p * v, d * v * v, -qq * den * den)


def freq_sweep(cfg: SweepConfig) -> tuple[list[SweepRow], SweepSummary]:
    """Pattern-frequency errors along the multiplier chain."""
    cyls = {w: cylinder(w) for w in cfg.patterns}
    rows: list[SweepRow] = []
    for n, q in cfg.multipliers():
        beta = scale_surd(cfg.alpha, q)
        h = ht_of_rational(q)
        try:
            cf = expand(beta, max_steps=cfg.max_steps)
        except PeriodTooLong:
            rows.append(SweepRow(n=n, h=h, truncated=True, period_len=0, preperiod_len=0,
                                 t_alpha=None, freqs={}, masses={}, errors={},
                                 pred_mult=None, actual_mult=None))
            continue
        freqs = {w: pattern_freq(cf, w) for w in cfg.patterns}
        masses = {w: cyls[w].gauss_mass for w in cfg.patterns}
        errors = {w: abs(float(freqs[w]) - masses[w]) for w in cfg.patterns}
        rows.append(SweepRow(n=n, h=h, truncated=False, period_len=len(cf.period),
                             preperiod_len=len(cf.preperiod), t_alpha=None,
                             freqs=freqs, masses=masses, errors=errors,
                             pred_mult=None, actual_mult=None))
    return rows, _summarize(rows)


def _summarize(rows: Sequence[SweepRow]) -> SweepSummary:
    live = [r for r in rows if not r.truncated and r.errors]
    maxima = [max(r.errors.values()) for r in live]
    first = max(maxima[:3]) if maxima else float("nan")
    last = max(maxima[-3:]) if maxima else float("nan")
    pts = [(math.log(r.h), math.log(m)) for r, m in zip(live, maxima) if m > 0 and r.h > 1]
    slope = None
    if len(pts) >= 2:
        xs, ys = zip(*pts)
        mx = sum(xs) / len(xs)
        my = sum(ys) / len(ys)
        denom = sum((x - mx) ** 2 for x in xs)
        if denom > 0:
            slope = sum((x - mx) * (y - my) for x, y in zip(xs, ys)) / denom
    # reference decay rate for pattern-frequency errors; implied constants
    # are unknown so this is never asserted, only reported
    return SweepSummary(first_max=first, last_max=last, slope=slope,
                        ref_slope=-float(DELTA0_REF) / 12)


def period_sweep(cfg: SweepConfig) -> list[SweepRow]:
    """Period lengths, orbit lengths, and the exact multiplier cross-check per n."""
    rows: list[SweepRow] = []
    for n, q in cfg.multipliers():
        beta = scale_surd(cfg.alpha, q)
        h = ht_of_rational(q)
        try:
            cf = expand(beta, max_steps=cfg.max_steps)
        except PeriodTooLong:
            rows.append(SweepRow(n=n, h=h, truncated=True, period_len=0, preperiod_len=0,
                                 t_alpha=None, freqs={}, masses={}, errors={},
                                 pred_mult=None, actual_mult=None))
            continue
        pred, actual, _ = growth_crosscheck(cfg.alpha, q, budget=cfg.budget)
        geo = geodesic_data(beta)
        rows.append(SweepRow(n=n, h=h, truncated=False, period_len=len(cf.period),
                             preperiod_len=len(cf.preperiod), t_alpha=geo.t_alpha,
                             freqs={}, masses={}, errors={},
                             pred_mult=pred, actual_mult=actual))
    return rows


def growth_crosscheck(alpha: Surd, q, budget: int = 200_000) -> tuple[int, int, bool]:
    """Predict the orbit-length multiplier of q*alpha p-adically and compare
    with the field computation; returns (k_pred, k_actual, equal).

    The prediction conjugates the unit matrix by the coordinate swap at
    primes in the denominator of q and asks for the depth-v_p(h) order at
    every p | ht(q), folding in integrality at the primes where the unit
    matrix itself is non-integral.
    """
    q = Fraction(q)
    h = ht_of_rational(q)
    delta = unit_action_matrix(alpha)
    extra = set(factorint(abs(delta.det()))) if abs(delta.det()) != 1 else set()
    swap_primes = set(factorint(q.denominator)) if q.denominator > 1 else set()
    k_pred = k_order_multi(delta, h, S_extra=extra, swap_primes=swap_primes, budget=budget)
    # field route: t_{q*alpha} = k_actual * t0 with t0 the field's base length
    k_actual = geodesic_data(scale_surd(alpha, q)).k_alpha
    return k_pred, k_actual, k_pred == k_actual


# -- emission -------------------------------------------------------------------


def _fmt(value, digits: int):
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, f".{digits}g")
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if value is None:
        return ""
    return str(value)


def rows_to_records(rows: Sequence[SweepRow], digits: int = 12) -> list[dict]:
    """Flatten sweep rows to ordered string records (shared by CSV and JSON)."""
    words = sorted({w for r in rows for w in r.freqs})
    recs = []
    for r in rows:
        rec = {
            "n": _fmt(r.n, digits),
            "h": _fmt(r.h, digits),
            "truncated": _fmt(r.truncated, digits),
            "period_len": _fmt(r.period_len, digits),
            "preperiod_len": _fmt(r.preperiod_len, digits),
            "t_alpha": _fmt(r.t_alpha, digits),
            "pred_mult": _fmt(r.pred_mult, digits),
            "actual_mult": _fmt(r.actual_mult, digits),
        }
        for w in words:
            tag = "_".join(map(str, w))
            rec[f"freq_{tag}"] = _fmt(r.freqs.get(w), digits)
            rec[f"mass_{tag}"] = _fmt(r.masses.get(w), digits)
            rec[f"err_{tag}"] = _fmt(r.errors.get(w), digits)
        recs.append(rec)
    return recs


def emit(records: Sequence[dict], csv_path: Optional[str] = None,
         json_path: Optional[str] = None) -> None:
    """Write records as RFC-4180 CSV (LF endings) and/or a JSON mirror."""
    if csv_path:
        text = records_to_csv(records)
        with open(csv_path, "w", newline="") as fh:
            fh.write(text)
    if json_path:
        with open(json_path, "w") as fh:
            json.dump(list(records), fh, indent=2, sort_keys=False)
            fh.write("\n")


BASE_FIELDS = ("n", "h", "truncated", "period_len", "preperiod_len",
               "t_alpha", "pred_mult", "actual_mult")


def records_to_csv(records: Sequence[dict], fieldnames: Optional[Sequence[str]] = None) -> str:
    buf = io.StringIO()
    if not records:
        fieldnames = fieldnames or BASE_FIELDS
    else:
        fieldnames = fieldnames or list(records[0].keys())
    writer = csv.DictWriter(buf, fieldnames=list(fieldnames), lineterminator="\n")
    writer.writeheader()
    writer.writerows(records)
    return buf.getvalue()


def parse_config(text: str) -> dict:
    """Flat key = value config format; '#' starts a comment."""
    out: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise InputError(f"config line {lineno}: expected key = value")
        key, val = line.split("=", 1)
        out[key.strip()] = val.strip()
    return out


def config_to_sweep(cfg: dict, **overrides) -> SweepConfig:
    """Build a SweepConfig from a parsed flat config plus keyword overrides."""
    def get(key, default=None):
        return overrides.get(key, cfg.get(key, default))

    alpha = get("alpha")
    if alpha is None:
        raise InputError("config needs alpha = P,D,Q")
    if isinstance(alpha, str):
        p, d, q = (int(x) for x in alpha.split(","))
        alpha = mk_surd(p, d, q)
    patterns = get("patterns", "1;2")
    if isinstance(patterns, str):
        patterns = tuple(tuple(int(x) for x in w.split(",")) for w in patterns.split(";") if w)
    q_chain = get("q_chain", "")
    if isinstance(q_chain, str):
        q_chain = tuple(Fraction(x) for x in q_chain.split(";") if x)
    k = get("k")
    k = int(k) if k not in (None, "") else None
    return SweepConfig(
        alpha=alpha,
        k=k,
        q_chain=q_chain,
        n_min=int(get("n_min", 0)),
        n_max=int(get("n_max", 10)),
        patterns=patterns,
        prec=int(get("prec", 256)),
        max_steps=int(get("max_steps", 500_000)),
        budget=int(get("budget", 200_000)),
        seed=int(get("seed", 0)),
        csv_path=get("csv"),
        json_path=get("json"),
        real_digits=int(get("real_digits", 12)),
    )
