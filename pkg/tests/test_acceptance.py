"""Acceptance criteria, one test per criterion, each printing a PASS/FAIL line.

Run with `pytest -v -s tests/test_acceptance.py` to see the lines inline.
Two documented deviations live in the decisions notes outside the package:
the digit oracle precision unit (AC-1) and the period-length reading of the
c0-estimation filter (AC-13).  AC-8's difference-monotonicity clause is
implemented as stated and fails; the analysis is recorded in the same notes.
"""

import math
import random
import time
from fractions import Fraction

import mpmath
import pytest
from scipy.integrate import quad

from qcf.cfe import cylinder, expand, nu_discrepancy, pattern_freq, period_points, reciprocal_tail, word_matrix
from qcf.errors import InsufficientData
from qcf.field import field_data, geodesic_data, unit_action_matrix
from qcf.harness import SweepConfig, freq_sweep, growth_crosscheck, period_sweep
from qcf.hecke import degenerate_sequence, sphere_reps
from qcf.natext import c_alpha_rows, estimate_c0, lebesgue_mc_check, natext_period
from qcf.padic import e_ratio_trace, k_order, k_order_bruteforce
from qcf.surd import RationalMat, eval_hp, mk_surd, moebius
from qcf._intmath import is_square

from conftest import rand_surd, rand_unimodular


def report(name: str, ok: bool, detail: str = "") -> None:
    tag = "PASS" if ok else "FAIL"
    print(f"{name} {tag}  {detail}".rstrip())


def cf_digit_oracle(d: int, count: int, dps: int = 512) -> list[int]:
    """Floating continued-fraction oracle at 512 digits of working precision."""
    with mpmath.workdps(dps):
        x = mpmath.sqrt(d)
        x = x - mpmath.floor(x)
        out = []
        for _ in range(count):
            y = 1 / x
            a = int(mpmath.floor(y))
            out.append(a)
            x = y - a
    return out


def test_ac01_cf_correctness():
    """First 60 digits of expand(sqrt d) match the floating oracle, d in [2,2000]."""
    t0 = time.time()
    for d in range(2, 2001):
        if is_square(d):
            continue
        cf = expand(mk_surd(0, d, 1))
        assert cf.digits(60) == cf_digit_oracle(d, 60), f"digit mismatch at d={d}"
    elapsed = time.time() - t0
    ok = elapsed < 10.0
    report("AC-1", ok, f"1954 radicands, 60 digits each, {elapsed:.1f}s")
    assert ok


def test_ac02_reconstruction():
    """Period-word matrix fixes the purely periodic tail, symbolically."""
    rng = random.Random(2)
    for _ in range(1000):
        s = rand_surd(rng, dmax=30_000, span=120)
        cf = expand(s)
        beta = reciprocal_tail(cf)
        assert moebius(word_matrix(cf.period), beta) == beta, s
    report("AC-2", True, "1000 random surds, exact fixed-point identity")


def test_ac03_degenerate_chain():
    """Negative-Pell chain for d=2: periods [2 k_j], discrepancy stays >= 0.5."""
    pts = degenerate_sequence(2, 5)
    assert [(p.k, p.n) for p in pts] == [(1, 1), (7, 5), (41, 29), (239, 169), (1393, 985)]
    worst = 1.0
    for p in pts:
        cf = expand(mk_surd(0, 2 * p.n * p.n, 1))
        assert cf.period == (2 * p.k,), p
        disc = nu_discrepancy(cf)
        worst = min(worst, disc)
        assert disc >= 0.5
    report("AC-3", True, f"periods [2k_j] exact, min discrepancy {worst:.3f} >= 0.5")


def test_ac04_pattern_frequency_two_routes():
    """Cyclic-count frequency equals interval membership as exact rationals."""
    rng = random.Random(4)
    checked = 0
    while checked < 500:
        s = rand_surd(rng, dmax=5000, span=40)
        w = tuple(rng.randint(1, 4) for _ in range(rng.randint(1, 3)))
        cf = expand(s)
        cyl = cylinder(w)
        # interval route, independent of the cyclic count inside pattern_freq
        members = 0
        for x in period_points(cf):
            val = eval_hp(x, 512)
            assert cyl.lo != val != cyl.hi
            members += cyl.lo < val < cyl.hi
        assert pattern_freq(cf, w) == Fraction(members, len(cf.period)), (s, w)
        checked += 1
    report("AC-4", True, "500 random (alpha, w) pairs, exact rational equality")


def test_ac05_growth_stabilization():
    """k_{p^n}(delta_alpha)/p^n exactly constant from n* <= 5 on."""
    for p_d_q in [(0, 2, 1), (0, 3, 1), (0, 50, 1)]:
        alpha = mk_surd(*p_d_q)
        delta = unit_action_matrix(alpha)
        for p in (2, 3):
            trace, stable = e_ratio_trace(delta, p, 6)
            assert stable <= 5, (p_d_q, p, trace)
            assert len(set(trace[stable - 1:])) == 1
    report("AC-5", True, "alpha in {sqrt2, sqrt3, sqrt50}, p in {2,3}, n* <= 5")


def test_ac06_growth_crosscheck():
    """p-adic order prediction equals the unit-power index, exactly."""
    t0 = time.time()
    alpha = mk_surd(0, 2, 1)
    grid = [2, 3, 5, 6, 7, 10, 15] + [2**n for n in range(1, 11)] + [3**n for n in range(1, 7)]
    for q in grid:
        pred, actual, equal = growth_crosscheck(alpha, q)
        assert equal, (q, pred, actual)
    elapsed = time.time() - t0
    ok = elapsed < 30.0
    report("AC-6", ok, f"{len(grid)} multipliers, exact equality, {elapsed:.2f}s")
    assert ok


def test_ac07_frequency_convergence():
    """Pattern-frequency errors for 2^n sqrt2 decay below 0.01 by n in {12,13,14}."""
    cfg = SweepConfig(alpha=mk_surd(0, 2, 1), k=2, n_min=0, n_max=14,
                      patterns=((1,), (2,), (1, 1)), max_steps=1_000_000)
    rows, _ = freq_sweep(cfg)
    err = {r.n: max(r.errors.values()) for r in rows}
    late = max(err[n] for n in (12, 13, 14))
    early = max(err[n] for n in (1, 2, 3))
    ok = late < 0.01 and late < early / 5
    report("AC-7", ok, f"late max {late:.5f} < 0.01 and < early/5 = {early / 5:.5f}")
    assert ok


def _sqrt3_ratio_table(n_max: int = 14):
    cfg = SweepConfig(alpha=mk_surd(0, 3, 1), k=2, n_min=0, n_max=n_max,
                      max_steps=1_000_000)
    rows = period_sweep(cfg)
    return [(r.n, r.period_len / r.h, r.period_len) for r in rows]


def _c0_estimate() -> float:
    # most accurate in-budget estimator: longest orbits available at desk scale
    est, _ = estimate_c0(range(2, 3000), 60)
    return est


def test_ac08a_period_ratio_differences_monotone():
    """|ratio_n - ratio_{n+1}| non-increasing over the last 5 n, as stated.

    This clause fails: consecutive CF-period counts fluctuate arithmetically
    at scale ~2^(-n/2), so their difference magnitudes are not monotone for
    any sweep length (measured for every n_max up to 19).  Recorded in the
    decisions notes; kept red rather than weakened.
    """
    table = _sqrt3_ratio_table(14)
    ratios = [x for _, x, _ in table]
    diffs = [abs(a - b) for a, b in zip(ratios, ratios[1:])]
    window = diffs[-5:]
    ok = all(a >= b for a, b in zip(window, window[1:]))
    report("AC-8a", ok, f"last-5 diffs {[round(x, 5) for x in window]}")
    assert ok, "difference magnitudes fluctuate; see decisions notes"


def test_ac08b_period_ratio_prediction():
    """Final |P|/2^n within 10% of t0 * e / (j * c0-estimate)."""
    table = _sqrt3_ratio_table(14)
    _, final_ratio, final_len = table[-1]
    t0 = field_data(3).t0
    delta = unit_action_matrix(mk_surd(0, 3, 1))
    trace, stable = e_ratio_trace(delta, 2, 6)
    e = trace[-1]
    j = 1 if final_len % 2 == 0 else 2
    pred = t0 * float(e) / (j * _c0_estimate())
    rel = abs(final_ratio - pred) / pred
    ok = rel < 0.10
    report("AC-8b", ok, f"ratio {final_ratio:.5f} vs prediction {pred:.5f}, rel {rel:.3f}")
    assert ok


def test_ac09_korder_closed_form_and_oracle():
    """Unipotent closed form, then fast path vs linear-scan oracle on 100 draws."""
    for p in (2, 3, 5):
        nil = RationalMat(1, 0, p * p, 1)
        for n in range(1, 9):
            assert k_order(nil, p, n) == p ** max(0, n - 2), (p, n)
    rng = random.Random(9)
    for _ in range(100):
        m = rand_unimodular(rng)
        p = rng.choice([2, 3, 5, 7])
        n = rng.randint(1, 6)
        fast = k_order(m, p, n)
        brute = k_order_bruteforce(m, p, n, budget=2_000_000)
        assert fast == brute, (m, p, n, fast, brute)
    report("AC-9", True, "closed form exact; fast == oracle on 100 random draws")


def test_ac10_cylinder_masses():
    """Quadrature agreement to 1e-12 and the exact telescoping identity."""
    words = [(a,) for a in range(1, 6)]
    words += [(a, b) for a in range(1, 6) for b in range(1, 6)]
    words += [(a, b, c) for a in range(1, 6) for b in range(1, 6) for c in range(1, 6)]
    worst = 0.0
    for w in words:
        cyl = cylinder(w)
        val, abserr = quad(lambda x: 1.0 / ((1.0 + x) * math.log(2)),
                           float(cyl.lo), float(cyl.hi), epsabs=1e-14, epsrel=1e-13)
        assert abserr < 1e-12
        worst = max(worst, abs(cyl.gauss_mass - val))
        assert abs(cyl.gauss_mass - val) < 1e-12, w
    prod = Fraction(1)
    for a in range(1, 101):
        c = cylinder((a,))
        prod *= (1 + c.hi) / (1 + c.lo)
    assert prod * (1 + Fraction(1, 101)) == 2  # exact closed form
    total = sum(cylinder((a,)).gauss_mass for a in range(1, 101))
    assert abs(total + math.log2(1 + Fraction(1, 101)) - 1.0) < 1e-12
    report("AC-10", True, f"{len(words)} words, worst quadrature gap {worst:.2e}")


def test_ac11_sphere_counts():
    """|sphere_reps(h)| equals the index formula and the kernel enumeration."""
    from test_hecke import count_primitive_sublattices

    for h in range(1, 61):
        count = len(sphere_reps(h))
        formula = h
        hh = h
        for p in range(2, h + 1):
            if hh % p == 0:
                formula = formula * (p + 1) // p
                while hh % p == 0:
                    hh //= p
        assert count == formula, h
        assert count == count_primitive_sublattices(h), h
    report("AC-11", True, "h <= 60: formula and sublattice enumeration agree")


def test_ac12_natural_extension():
    """Tagged periods match the parity rule; invariance Monte-Carlo passes."""
    rng = random.Random(12)
    for _ in range(200):
        s = rand_surd(rng, dmax=4000, span=30)
        cf = expand(s)
        pbar, j = natext_period(cf)  # verified internally by exact iteration
        assert pbar == j * len(cf.period)
        assert j == (1 if len(cf.period) % 2 == 0 else 2)
    res = lebesgue_mc_check(1_000_000, 10, 20, seed=1)
    ok = res.pvalue > 0.001 and res.marginal_ok
    report("AC-12", ok,
           f"200 tagged periods exact; chi2 p={res.pvalue:.3f}, "
           f"marginal max {res.marginal_max_sigma:.2f} sigma")
    assert ok


def test_ac13_c0_estimate():
    """Spread of c_alpha under 5% on the long-orbit selection below d=500.

    No d < 500 has Gauss period >= 50 (the maximum is 37 at d=421), so the
    selection filter is read against the tagged cross-section period
    j*|P| -- the orbit size in the c_alpha formula itself.  The literal
    reading is asserted empty so any change here forces a review.
    """
    with pytest.raises(InsufficientData):
        estimate_c0(range(2, 500), 50)  # literal reading: provably empty

    rows = c_alpha_rows(range(2, 500), 1)
    sel = [r for r in rows if r[2] * r[1] >= 50]
    assert sel, "tagged selection must be nonempty"
    weight = sum(r[2] * r[1] for r in sel)
    est = sum(r[2] * r[1] * r[4] for r in sel) / weight
    spread = max(abs(r[4] - est) for r in sel) / est
    ok = spread < 0.05

    # back-prediction clause: |P| from t/(j c0) within 10% wherever the
    # tagged period exceeds 100; no d < 500 qualifies, so the loop is empty
    checked = 0
    for d, ell, j, t, _ in sel:
        if j * ell > 100:
            pred = t / (j * est)
            assert abs(pred - ell) / ell < 0.10, d
            checked += 1
    report("AC-13", ok,
           f"{len(sel)} points, estimate {est:.4f}, spread {spread:.3%}; "
           f"back-prediction vacuous ({checked} points over |P~|>100)")
    assert ok
