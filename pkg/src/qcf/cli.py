"""Command-line interface.

One subcommand per capability; global flags select JSON output, CSV paths,
precision and budgets.  Exit codes: 0 success, 2 invalid input, 3 budget or
precision exhaustion, 4 internal invariant failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import harness, natext
from .cfe import cylinder, expand, nu_discrepancy, pattern_freq, period_points
from .errors import InputError, InvariantError, QcfError, ResourceError
from .field import field_data, geodesic_data, split_type
from .hecke import degenerate_sequence, sphere_reps
from .padic import e_ratio_trace, k_order, k_order_bruteforce
from .surd import RationalMat, Surd, eval_hp, mk_surd

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_RESOURCE = 3
EXIT_INVARIANT = 4


def _parse_surd(text: str) -> Surd:
    try:
        p, d, q = (int(x) for x in text.split(","))
    except ValueError as exc:
        raise InputError(f"expected alpha as P,D,Q integers, got {text!r}") from exc
    return mk_surd(p, d, q)


def _parse_mat(text: str) -> RationalMat:
    try:
        a, b, c, d = (int(x) for x in text.split(","))
    except ValueError as exc:
        raise InputError(f"expected matrix as a,b,c,d integers, got {text!r}") from exc
    return RationalMat.of(a, b, c, d)


def _parse_word(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError as exc:
        raise InputError(f"expected a digit word like 1,2,1, got {text!r}") from exc


def _parse_primes(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x]
    except ValueError as exc:
        raise InputError(f"expected primes like 2,3,5, got {text!r}") from exc


def _emit(args, payload: dict, rows=None, fieldnames=None) -> None:
    if args.csv and rows is not None:
        harness.emit(rows, csv_path=args.csv)
    if args.json:
        print(json.dumps(payload, indent=2, default=str))
        return
    for key, val in payload.items():
        print(f"{key}: {val}")


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"expected a rational like 8 or 2/3, got {text!r}") from exc


def _real(x: float, digits: int) -> str:
    return format(x, f".{digits}g")


_GLOBAL_DEFAULTS = {
    "json": False,
    "csv": None,
    "prec": 256,
    "max_steps": 500_000,
    "budget": 200_000,
    "seed": 0,
    "config": None,
    "digits": 12,
}


def _add_global_flags(p: argparse.ArgumentParser) -> None:
    # default=SUPPRESS so a flag parsed before the subcommand is not reset
    # by the subparser; missing attributes are filled in afterwards
    p.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                   help="machine-readable output")
    p.add_argument("--csv", metavar="PATH", default=argparse.SUPPRESS,
                   help="write tabular output as CSV")
    p.add_argument("--prec", type=int, metavar="BITS", default=argparse.SUPPRESS)
    p.add_argument("--max-steps", type=int, metavar="N", default=argparse.SUPPRESS)
    p.add_argument("--budget", type=int, metavar="N", default=argparse.SUPPRESS)
    p.add_argument("--seed", type=int, metavar="N", default=argparse.SUPPRESS)
    p.add_argument("--config", metavar="PATH", default=argparse.SUPPRESS,
                   help="flat key = value config file")
    p.add_argument("--digits", type=int, default=argparse.SUPPRESS,
                   help="decimal digits for reals")


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="qcf", description=__doc__)
    _add_global_flags(parser)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_parser(name, **kw):
        p = sub.add_parser(name, **kw)
        _add_global_flags(p)
        return p

    s = add_parser("expand", help="continued fraction of a quadratic irrational")
    s.add_argument("--alpha", required=True)

    s = add_parser("period", help="period summary of a quadratic irrational")
    s.add_argument("--alpha", required=True)

    s = add_parser("freq", help="pattern frequency in the period")
    s.add_argument("--alpha", required=True)
    s.add_argument("--word", required=True)

    s = add_parser("cylinder", help="cylinder interval and Gauss-Kuzmin mass")
    s.add_argument("--word", required=True)

    s = add_parser("pell", help="fundamental unit and negative Pell data")
    s.add_argument("--d", type=int, required=True)

    s = add_parser("geodesic", help="stabilizer matrix and orbit length")
    s.add_argument("--alpha", required=True)

    s = add_parser("split", help="splitting type of primes in Q(sqrt(d))")
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--primes", required=True)

    s = add_parser("korder", help="depth-n order of a matrix at p")
    s.add_argument("--delta", required=True, help="a,b,c,d")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--oracle", action="store_true", help="use the linear-scan oracle")
    s.add_argument("--trace", action="store_true", help="emit the ratio trace up to n")

    s = add_parser("sphere", help="index-h primitive sublattice representatives")
    s.add_argument("--h", type=int, required=True)

    s = add_parser("degenerate", help="negative-Pell degenerate sequence")
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--count", type=int, default=5)

    s = add_parser("natext", help="tagged period and c_alpha of the lifted cycle")
    s.add_argument("--alpha", required=True)

    s = add_parser("estimate-c0", help="estimate the length-per-point constant")
    s.add_argument("--dmax", type=int, required=True)
    s.add_argument("--min-period", type=int, required=True)

    s = add_parser("mc-check", help="invariance Monte-Carlo check")
    s.add_argument("--samples", type=int, default=1_000_000)
    s.add_argument("--steps", type=int, default=10)
    s.add_argument("--bins", type=int, default=20)

    s = add_parser("sweep-freq", help="pattern-frequency sweep along k^n alpha")
    s.add_argument("--alpha")
    s.add_argument("--k", type=int)
    s.add_argument("--n-max", type=int)
    s.add_argument("--patterns", help="semicolon-separated words, e.g. 1;2;1,1")

    s = add_parser("sweep-period", help="period-growth sweep along k^n alpha")
    s.add_argument("--alpha")
    s.add_argument("--k", type=int)
    s.add_argument("--n-max", type=int)

    s = add_parser("crosscheck", help="p-adic vs field multiplier cross-check")
    s.add_argument("--alpha", required=True)
    s.add_argument("--q", required=True, help="rational multiplier, e.g. 8 or 2/3")

    args = parser.parse_args(argv)
    for key, val in _GLOBAL_DEFAULTS.items():
        if not hasattr(args, key):
            setattr(args, key, val)
    try:
        return _dispatch(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ResourceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (InvariantError, AssertionError) as exc:
        print(f"internal invariant failure: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except QcfError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def _sweep_config(args, need_patterns: bool) -> harness.SweepConfig:
    cfg: dict = {}
    if args.config:
        with open(args.config) as fh:
            cfg = harness.parse_config(fh.read())
    overrides: dict = {}
    if args.alpha:
        overrides["alpha"] = args.alpha
    if args.k is not None:
        overrides["k"] = args.k
    if getattr(args, "n_max", None) is not None:
        overrides["n_max"] = args.n_max
    if need_patterns and getattr(args, "patterns", None):
        overrides["patterns"] = args.patterns
    overrides.setdefault("max_steps", args.max_steps)
    overrides.setdefault("budget", args.budget)
    overrides.setdefault("prec", args.prec)
    overrides.setdefault("seed", args.seed)
    return harness.config_to_sweep(cfg, **overrides)


def _dispatch(args) -> int:
    digits = args.digits
    cmd = args.command

    if cmd == "expand":
        cf = expand(_parse_surd(args.alpha), max_steps=args.max_steps)
        _emit(args, cf.to_json_dict())
        return EXIT_OK

    if cmd == "period":
        alpha = _parse_surd(args.alpha)
        cf = expand(alpha, max_steps=args.max_steps)
        rows = [{"alpha_p": str(alpha.num_p), "alpha_d": str(alpha.rad_d),
                 "alpha_q": str(alpha.den_q), "period_len": str(len(cf.period)),
                 "preperiod_len": str(len(cf.preperiod))}]
        _emit(args, rows[0], rows=rows)
        return EXIT_OK

    if cmd == "freq":
        cf = expand(_parse_surd(args.alpha), max_steps=args.max_steps)
        w = _parse_word(args.word)
        f = pattern_freq(cf, w)
        cyl = cylinder(w)
        _emit(args, {
            "word": ",".join(map(str, w)),
            "freq": f"{f.numerator}/{f.denominator}",
            "gauss_mass": _real(cyl.gauss_mass, digits),
            "abs_error": _real(abs(float(f) - cyl.gauss_mass), digits),
        })
        return EXIT_OK

    if cmd == "cylinder":
        cyl = cylinder(_parse_word(args.word))
        _emit(args, {
            "word": ",".join(map(str, cyl.word)),
            "lo": str(cyl.lo), "hi": str(cyl.hi), "length": str(cyl.length),
            "gauss_mass": _real(cyl.gauss_mass, digits),
        })
        return EXIT_OK

    if cmd == "pell":
        fd = field_data(args.d)
        _emit(args, {
            "d": fd.d, "disc": fd.disc,
            "eps": f"{fd.eps[0]}+{fd.eps[1]}*w", "eps_norm": fd.eps_norm,
            "eps_plus": f"{fd.eps_plus[0]}+{fd.eps_plus[1]}*w",
            "t0": _real(fd.t0, digits),
            "neg_pell": f"{fd.neg_pell[0]},{fd.neg_pell[1]}" if fd.neg_pell else "none",
        })
        return EXIT_OK

    if cmd == "geodesic":
        geo = geodesic_data(_parse_surd(args.alpha))
        g = geo.gamma_alpha
        _emit(args, {
            "conductor": geo.conductor,
            "gamma": f"{g.a},{g.b},{g.c},{g.d}",
            "mult": geo.k_alpha,
            "t_alpha": _real(geo.t_alpha, digits),
        })
        return EXIT_OK

    if cmd == "split":
        out = {str(p): split_type(args.d, p).value for p in _parse_primes(args.primes)}
        _emit(args, out)
        return EXIT_OK

    if cmd == "korder":
        delta = _parse_mat(args.delta)
        fn = k_order_bruteforce if args.oracle else k_order
        if args.trace:
            trace, stable = e_ratio_trace(delta, args.p, args.n, budget=args.budget)
            rows = [{"p": str(args.p), "n": str(i + 1),
                     "k": str(int(t * args.p ** (i + 1))),
                     "k_over_pn_num": str(t.numerator),
                     "k_over_pn_den": str(t.denominator)} for i, t in enumerate(trace)]
            _emit(args, {"trace": [str(t) for t in trace], "stable_from": stable}, rows=rows)
            return EXIT_OK
        k = fn(delta, args.p, args.n, budget=args.budget)
        _emit(args, {"p": args.p, "n": args.n, "k": k})
        return EXIT_OK

    if cmd == "sphere":
        reps = sphere_reps(args.h)
        rows = [{"h": str(args.h), "a": str(r.a), "b": str(r.b), "e": str(r.e)} for r in reps]
        _emit(args, {"h": args.h, "count": len(reps)}, rows=rows)
        return EXIT_OK

    if cmd == "degenerate":
        pts = degenerate_sequence(args.d, args.count)
        rows = []
        for pt in pts:
            cf = expand(mk_surd(0, pt.n * pt.n * args.d, 1), max_steps=args.max_steps)
            rows.append({"j": str(pt.j), "n_j": str(pt.n), "k_j": str(pt.k),
                         "period_len": str(len(cf.period))})
        _emit(args, {"d": args.d, "points": rows}, rows=rows)
        return EXIT_OK

    if cmd == "natext":
        alpha = _parse_surd(args.alpha)
        cf = expand(alpha, max_steps=args.max_steps)
        pbar, j = natext.natext_period(cf)
        geo = geodesic_data(alpha)
        _emit(args, {
            "period_len": len(cf.period), "tagged_period": pbar, "j": j,
            "t_alpha": _real(geo.t_alpha, digits),
            "c_alpha": _real(geo.t_alpha / pbar, digits),
        })
        return EXIT_OK

    if cmd == "estimate-c0":
        rows_raw = natext.c_alpha_rows(range(2, args.dmax), args.min_period,
                                       max_steps=args.max_steps)
        est, spread = natext.estimate_c0(range(2, args.dmax), args.min_period)
        rows = [{"d": str(d), "period_len": str(ell), "j": str(j),
                 "t_alpha": _real(t, digits), "c_alpha": _real(c, digits)}
                for d, ell, j, t, c in rows_raw]
        _emit(args, {"estimate": _real(est, digits), "spread": _real(spread, digits),
                     "points": len(rows)}, rows=rows)
        return EXIT_OK

    if cmd == "mc-check":
        res = natext.lebesgue_mc_check(args.samples, args.steps, args.bins, args.seed)
        _emit(args, {
            "chi2": _real(res.chi2, digits), "dof": res.dof,
            "pvalue": _real(res.pvalue, digits),
            "marginal_max_sigma": _real(res.marginal_max_sigma, digits),
            "marginal_ok": res.marginal_ok,
        })
        return EXIT_OK

    if cmd == "sweep-freq":
        cfg = _sweep_config(args, need_patterns=True)
        rows, summary = harness.freq_sweep(cfg)
        recs = harness.rows_to_records(rows, digits)
        if args.csv:
            harness.emit(recs, csv_path=args.csv)
        payload = {
            "rows": len(recs),
            "first_max": _real(summary.first_max, digits),
            "last_max": _real(summary.last_max, digits),
            "slope": _real(summary.slope, digits) if summary.slope is not None else "none",
            "ref_slope": _real(summary.ref_slope, digits),
        }
        if args.json:
            payload["table"] = recs
        _emit(args, payload)
        return EXIT_OK

    if cmd == "sweep-period":
        cfg = _sweep_config(args, need_patterns=False)
        rows = harness.period_sweep(cfg)
        recs = harness.rows_to_records(rows, digits)
        if args.csv:
            harness.emit(recs, csv_path=args.csv)
        payload = {"rows": len(recs)}
        if args.json:
            payload["table"] = recs
        else:
            for r in rows:
                payload[f"n={r.n}"] = (f"|P|={r.period_len} ratio="
                                       f"{_real(r.period_len / r.h, digits)} "
                                       f"pred={r.pred_mult} actual={r.actual_mult}")
        _emit(args, payload)
        return EXIT_OK

    if cmd == "crosscheck":
        alpha = _parse_surd(args.alpha)
        pred, actual, equal = harness.growth_crosscheck(alpha, _fraction(args.q),
                                                        budget=args.budget)
        _emit(args, {"k_pred": pred, "k_actual": actual, "equal": equal})
        return EXIT_OK

    raise InputError(f"unknown command {cmd!r}")


if __name__ == "__main__":
    sys.exit(main())
