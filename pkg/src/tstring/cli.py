"""Command-line entry point.

Exit codes: 0 success, 1 verification failure, 2 invalid input.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from fractions import Fraction

from .analytic import (
    EvalConfig,
    eval_tstring_series,
    radial_average,
    report,
    theta_eta_at_one,
)
from .identity import verify_formal
from .kostant import tstring_a
from .lattice import terms_to_json, theta_term_list
from .series import to_json
from .weyl import normalize_problem


class InputError(Exception):
    pass


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not an exact rational: {text!r}") from exc


def _tau(text: str) -> complex:
    s = text.replace(" ", "").replace("i", "j")
    try:
        val = complex(s)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"cannot parse tau {text!r}") from exc
    return val


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tstring",
        description="t-string functions of A_1^(1): tables and verification of the "
                    "theta-function description.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--m", type=int, required=True, help="level")
    common.add_argument("--k", type=int, required=True, help="<Lambda, alpha_1^v>")
    common.add_argument("--l", type=int, required=True, help="<lambda, alpha_1^v>")
    common.add_argument("--dmax", type=int, default=10)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--seed", type=int, default=0,
                        help="recorded in JSON output; all commands are deterministic")
    numeric = argparse.ArgumentParser(add_help=False)
    numeric.add_argument("--t", type=float, default=0.5)
    numeric.add_argument("--tau", type=_tau, default=1j, help='e.g. "0.75i" or "0.1+1i"')
    numeric.add_argument("--half-n-max", type=_rational, default=Fraction(30))
    numeric.add_argument("--nmax", type=int, default=60)
    numeric.add_argument("--quad-points", type=int, default=1024)
    numeric.add_argument("--qmax", type=int, default=20)
    numeric.add_argument("--tol", type=float, default=None)

    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("strings", parents=[common], help="Kostka-Foulkes table along the delta-string")
    th = sub.add_parser("theta", parents=[common], help="theta term list")
    th.add_argument("--half-n-max", type=_rational, default=None)
    vf = sub.add_parser("verify-formal", parents=[common],
                        help="exact comparison of the two routes to the t-string function")
    vf.add_argument("--perturb-term", type=int, default=None, metavar="INDEX",
                    help="flip the sign of one theta term (fault injection)")
    sub.add_parser("verify-integral", parents=[common, numeric],
                   help="radial average against the series value")
    sub.add_parser("limits", parents=[common, numeric],
                   help="radial average as t -> 1 against theta_L eta^-3")
    return parser


def _problem(args):
    try:
        return normalize_problem(args.m, args.k, args.l)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def _config(args, **over) -> EvalConfig:
    try:
        cfg = EvalConfig(tau=args.tau, t=args.t, halfN_max=args.half_n_max, nmax=args.nmax,
                         quad_points=args.quad_points, qmax=args.qmax)
        return replace(cfg, **over) if over else cfg
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def cmd_strings(args, out) -> int:
    p = _problem(args)
    if args.dmax < 0:
        raise InputError("dmax must be nonnegative")
    a = tstring_a(p, args.dmax)
    if args.format == "json":
        out.write(to_json(a) + "\n")
        return 0
    coeffs = a.z_free_coeffs()
    for k in range(args.dmax + 1):
        out.write(f"{k}: {coeffs.get(Fraction(k), 0)}\n")
    out.write(f"s = {p.s}\n")
    return 0


def cmd_theta(args, out) -> int:
    p = _problem(args)
    hmax = args.half_n_max
    if hmax is None:
        hmax = p.s + Fraction(1, 8) + args.dmax
    if hmax <= 0:
        raise InputError("--half-n-max must be positive")
    terms = theta_term_list(p, hmax)
    if args.format == "json":
        out.write(terms_to_json(terms) + "\n")
        return 0
    out.write(f"{'halfN':>10} {'x':>8} {'y':>8} {'sign':>4} {'tshift':>6} {'zshift':>6}\n")
    for tt in terms:
        out.write(f"{str(tt.halfN):>10} {str(tt.x):>8} {str(tt.y):>8} {tt.sign:>4} "
                  f"{tt.tshift:>6} {str(tt.zshift):>6}\n")
    return 0


def cmd_verify_formal(args, out) -> int:
    p = _problem(args)
    terms = None
    if args.perturb_term is not None:
        terms = theta_term_list(p, p.s + Fraction(1, 8) + args.dmax)
        i = args.perturb_term
        if not 0 <= i < len(terms):
            raise InputError(f"--perturb-term must be in [0, {len(terms)})")
        terms[i] = replace(terms[i], sign=-terms[i].sign)
    rep = verify_formal(p, args.dmax, terms)
    if args.format == "json":
        rec = {"problem": list(p.key()), "dmax": args.dmax, "equal": rep.equal,
               "seed": args.seed}
        if rep.diff is not None:
            (q, z, e), c1, c2 = rep.diff
            rec["first_difference"] = {"q": str(q), "z": str(z), "t": e,
                                       "method_a": str(c1), "method_b": str(c2)}
        out.write(json.dumps(rec) + "\n")
    else:
        verdict = "PASS" if rep.equal else "FAIL"
        out.write(f"{verdict} (m,k,l)={p.key()} dmax={args.dmax} s={p.s}\n")
        if rep.diff is not None:
            (q, z, e), c1, c2 = rep.diff
            out.write(f"first difference at q^{q} z^{z} t^{e}: method A {c1}, method B {c2}\n")
    return 0 if rep.equal else 1


def cmd_verify_integral(args, out) -> int:
    p = _problem(args)
    cfg = _config(args)
    if cfg.t >= 1:
        raise InputError("verify-integral needs t < 1")
    tol = 1e-6 if args.tol is None else args.tol
    lhs = radial_average(cfg, p)
    rhs = eval_tstring_series(p, cfg)
    rep = report(lhs, rhs, cfg, problem=list(p.key()), tol=tol, seed=args.seed)
    ok = bool(rep["abs_err"] <= tol)
    if args.format == "json":
        out.write(json.dumps({**rep, "pass": ok}) + "\n")
    else:
        out.write(f"{'PASS' if ok else 'FAIL'} radial average {lhs:.12g} vs series {rhs:.12g} "
                  f"|diff| = {rep['abs_err']:.3e} (tol {tol:g})\n")
    return 0 if ok else 1


LIMIT_SCHEDULE = ((0.9, 256), (0.99, 2048), (0.999, 16384))


def cmd_limits(args, out) -> int:
    p = _problem(args)
    tol = 1e-2 if args.tol is None else args.tol
    base = _config(args, t=LIMIT_SCHEDULE[0][0])
    terms = theta_term_list(p, base.halfN_max)
    target = theta_eta_at_one(p, base, terms)
    rows = []
    for t, M in LIMIT_SCHEDULE:
        cfg = replace(base, t=t, quad_points=M)
        val = radial_average(cfg, p, terms)
        rows.append({"t": t, "quad_points": M, "value": [float(val.real), float(val.imag)],
                     "abs_err": float(abs(val - target))})
    errs = [r["abs_err"] for r in rows]
    ok = bool(all(a > b for a, b in zip(errs, errs[1:])) and errs[-1] <= tol)
    if args.format == "json":
        out.write(json.dumps({"problem": list(p.key()), "target": [float(target.real), float(target.imag)],
                              "rows": rows, "pass": ok, "tol": tol}) + "\n")
    else:
        out.write(f"theta_L * eta^-3 = {target:.12g}\n")
        for r in rows:
            out.write(f"t={r['t']:<6} nodes={r['quad_points']:<6} |err|={r['abs_err']:.3e}\n")
        out.write("PASS\n" if ok else "FAIL\n")
    return 0 if ok else 1


COMMANDS = {
    "strings": cmd_strings,
    "theta": cmd_theta,
    "verify-formal": cmd_verify_formal,
    "verify-integral": cmd_verify_integral,
    "limits": cmd_limits,
}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args, out)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
