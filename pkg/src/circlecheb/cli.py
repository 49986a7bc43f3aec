"""Command-line interface: solvers, checkers and statistics with JSON/CSV output."""

from __future__ import annotations

import argparse
import cmath
import io
import json
import math
import os
import sys
import tempfile

import numpy as np

from . import circle, inequalities, oracle, polynomial, remez, rootfn, zeros
from .rootfn import WeightedRootFn

SCHEMA_VERSION = 1
EXIT_OK = 0
EXIT_NUMERICAL = 2
EXIT_USAGE = 64


class UsageError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"error: {message}\n")
        sys.exit(EXIT_USAGE)


def _complex_pair(z) -> list[float]:
    zc = complex(z)
    return [zc.real, zc.imag]


def _envelope(subcommand: str, config: dict, results: dict) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "subcommand": subcommand,
        "config": config,
        "results": results,
    }


def _emit(payload, args, csv_rows=None, csv_header=None):
    """Write JSON (default) or CSV, to stdout or atomically to a file."""
    if args.format == "csv":
        if csv_rows is None:
            raise UsageError("this subcommand has no CSV representation")
        buf = io.StringIO()
        buf.write(",".join(csv_header) + "\n")
        for row in csv_rows:
            buf.write(
                ",".join(repr(float(x)) if isinstance(x, float) else str(x) for x in row)
                + "\n"
            )
        text = buf.getvalue()
    else:
        text = json.dumps(payload, indent=2) + "\n"
    if args.output:
        directory = os.path.dirname(os.path.abspath(args.output))
        fd, tmp = tempfile.mkstemp(dir=directory, prefix=".circlecheb-")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                fh.write(text)
            os.replace(tmp, args.output)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
    else:
        sys.stdout.write(text)


def cmd_solve(args) -> int:
    if args.s < 0:
        raise UsageError("--s must be >= 0")
    if args.n < 0:
        raise UsageError("--n must be >= 0")
    res = circle.solve_free(args.s, args.n, args.tol)
    rts = polynomial.roots(res.free).roots if args.n >= 1 else ()
    results = {
        "coeffs": list(res.free.coeffs),
        "roots": [_complex_pair(z) for z in rts],
        "constrained_coeffs": list(res.constrained.coeffs),
        "constrained_angles": list(res.angles),
        "free_norm": res.free_norm,
        "constrained_norm": res.constrained_norm,
        "alternation_defect": res.diagnostics.get("interval_defect"),
    }
    config = {"s": args.s, "n": args.n, "tol": args.tol, "seed": args.seed}
    _emit(_envelope("solve", config, results), args)
    return EXIT_OK


def cmd_norms(args) -> int:
    if args.s < 0:
        raise UsageError("--s must be >= 0")
    if args.n_max < 1:
        raise UsageError("--n-max must be >= 1")
    rows = circle.norm_table(args.s, args.n_max, args.tol)
    monotone = all(b.norm < a.norm for a, b in zip(rows, rows[1:]))
    results = {
        "rows": [
            {"n": r.n, "norm": r.norm, "lower_bound": r.lower_bound,
             "asymptotic_bound": r.asymptotic_bound}
            for r in rows
        ],
        "strictly_decreasing": monotone,
        "all_at_least_one": all(r.norm >= 1.0 for r in rows),
    }
    config = {"s": args.s, "n_max": args.n_max, "tol": args.tol, "seed": args.seed}
    csv_rows = [
        (r.n, r.norm, "" if r.lower_bound is None else r.lower_bound) for r in rows
    ]
    _emit(_envelope("norms", config, results), args, csv_rows, ("n", "norm", "lower_bound"))
    return EXIT_OK


def _load_fn(path) -> WeightedRootFn:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read factors file: {exc}") from exc
    try:
        scale = complex(*data.get("scale", [1.0, 0.0]))
        factors = tuple((complex(re, im), float(s)) for re, im, s in data["factors"])
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"malformed factors file: {exc}") from exc
    return WeightedRootFn(scale, factors)


def cmd_erdos_lax(args) -> int:
    f = _load_fn(args.factors_file)
    config = {
        "factors_file": args.factors_file, "mode": args.mode, "tol": args.tol,
        "seed": args.seed,
    }
    if args.mode == "equality":
        rep = inequalities.check_equality_unimodular(f, args.tol)
    elif args.mode == "generalized":
        rep = inequalities.check_generalized_inequality(f, args.tol)
    elif args.mode == "turan":
        rep = inequalities.check_turan_bound(f, args.tol)
    elif args.mode == "max-point":
        mp = inequalities.check_maximal_point_identity(f, args.tol)
        results = {
            "z_star": _complex_pair(mp.z_star),
            "fn_norm": mp.fn_norm,
            "deriv_norm": mp.deriv_norm,
            "deriv_gap": mp.deriv_gap,
            "halfsum_gap": mp.halfsum_gap,
            "realness_gap": mp.realness_gap,
            "ok": mp.ok,
        }
        _emit(_envelope("erdos-lax", config, results), args)
        return EXIT_OK
    elif args.mode == "polya-szego":
        zeta = cmath.exp(1j * args.zeta_angle)
        zr = inequalities.check_polya_szego_zeros(f, zeta, args.shift)
        config.update({"zeta_angle": args.zeta_angle, "shift": args.shift})
        results = {
            "all_on_circle": zr.all_on_circle,
            "max_modulus_deviation": zr.max_modulus_deviation,
            "combination_roots": [_complex_pair(z) for z in zr.combination_roots],
            "pinned_roots": [_complex_pair(z) for z in zr.pinned_roots],
            "interior_min_modulus": zr.interior_min_modulus,
            "degree": zr.degree,
        }
        _emit(_envelope("erdos-lax", config, results), args)
        return EXIT_OK
    else:  # conjecture exploration: fractional exterior exponents, no verdict
        lhs = rootfn.sup_norm(f, "derivative").value
        rhs = 0.5 * f.total_exponent * rootfn.sup_norm(f, "fn").value
        results = {"lhs": lhs, "rhs": rhs, "ratio": lhs / rhs, "verdict": None}
        _emit(_envelope("erdos-lax", config, results), args)
        return EXIT_OK
    results = {
        "lhs": rep.lhs, "rhs": rep.rhs, "ratio": rep.ratio, "verdict": rep.verdict,
        "tol": rep.tol,
    }
    _emit(_envelope("erdos-lax", config, results), args)
    return EXIT_OK


def cmd_zeros(args) -> int:
    if args.s < 0:
        raise UsageError("--s must be >= 0")
    if args.n < 1:
        raise UsageError("--n must be >= 1")
    nu = zeros.zero_measure(args.s, args.n, args.tol)
    radial = {repr(r): zeros.radial_mass(nu, r) for r in (args.radial or [0.9])}
    pts = [
        [float(z.real), float(z.imag), float(abs(z)),
         float(math.atan2(z.imag, z.real) % (2.0 * math.pi))]
        for z in nu.zeros
    ]
    pts.sort()
    results = {
        "n": nu.n,
        "s": nu.s,
        "min_modulus": zeros.min_modulus(nu),
        "angular_discrepancy": zeros.angular_discrepancy(nu),
        "radial_mass": radial,
        "points": pts,
    }
    config = {"s": args.s, "n": args.n, "tol": args.tol,
              "radial": list(args.radial or [0.9]), "seed": args.seed}
    _emit(_envelope("zeros", config, results), args,
          [tuple(p) for p in pts], ("re", "im", "modulus", "angle"))
    return EXIT_OK


def cmd_lemniscate(args) -> int:
    spec = zeros.LemniscateSpec(args.m, args.l, args.n)
    res = zeros.lemniscate_transport(spec, args.tol)
    results = {
        "m": spec.m, "l": spec.l, "n": spec.n, "degree": res.poly.degree,
        "coeffs": list(res.poly.coeffs),
        "zeros": [_complex_pair(z) for z in res.zeros],
        "norm_boundary": res.norm,
        "norm_circle": res.circle_norm,
        "boundary_count": len(res.boundary),
    }
    config = {"m": args.m, "l": args.l, "n": args.n, "tol": args.tol, "seed": args.seed}
    csv_rows = [(z.real, z.imag) for z in res.boundary]
    _emit(_envelope("lemniscate", config, results), args, csv_rows, ("re", "im"))
    return EXIT_OK


def cmd_asymptotics(args) -> int:
    if args.alpha < 0 or args.beta < 0:
        raise UsageError("--alpha/--beta must be >= 0")
    if args.m_max < 1:
        raise UsageError("--m-max must be >= 1")
    weight = remez.GeneralizedWeight.jacobi(args.alpha, args.beta)
    limit = 2.0 ** (-(args.alpha + args.beta))
    ms = sorted(set(list(range(args.m_step, args.m_max + 1, args.m_step)) + [args.m_max]))
    rows = []
    for m in ms:
        r = remez.remez_solve(weight, m, args.tol)
        scaled = 2.0 ** (m - 1) * r.norm
        rows.append({"m": m, "scaled_norm": scaled, "limit": limit,
                     "prediction": 2.0 ** (m - 1) * remez.bernstein_prediction(weight, m)})
    results = {"rows": rows, "limit": limit}
    config = {"alpha": args.alpha, "beta": args.beta, "m_max": args.m_max,
              "m_step": args.m_step, "tol": args.tol, "seed": args.seed}
    csv_rows = [(r["m"], r["scaled_norm"], r["limit"]) for r in rows]
    _emit(_envelope("asymptotics", config, results), args, csv_rows,
          ("m", "scaled_norm", "limit"))
    return EXIT_OK


def cmd_oracle(args) -> int:
    if args.s < 0:
        raise UsageError("--s must be >= 0")
    if args.n < 0:
        raise UsageError("--n must be >= 0")
    config = {"s": args.s, "n": args.n, "mode": args.mode, "tol": args.tol,
              "seed": args.seed, "warm": args.warm}
    if args.mode == "free":
        orc = oracle.oracle_free(args.s, args.n, tol=args.tol)
        pipe = circle.solve_free(args.s, args.n, args.tol)
        coeff_diff = max(
            (abs(a - b) for a, b in zip(orc.minimizer.coeffs, pipe.free.coeffs)),
            default=0.0,
        )
        results = {
            "oracle_coeffs": list(orc.minimizer.coeffs),
            "pipeline_coeffs": list(pipe.free.coeffs),
            "oracle_norm": orc.norm,
            "pipeline_norm": pipe.free_norm,
            "max_coeff_diff": coeff_diff,
            "norm_diff": abs(orc.norm - pipe.free_norm),
            "certificate": [list(c) for c in orc.certificate],
        }
    else:
        if args.s < 1.0:
            raise UsageError("constrained mode needs --s >= 1")
        warm = None
        if args.warm:
            pipe_first = circle.solve_constrained(args.s, args.n, args.tol)
            warm = [a for a in pipe_first.angles if 0.0 < a < math.pi]
        orc = oracle.oracle_constrained(args.s, args.n, tol=args.tol,
                                        seed=args.seed, warm_start=warm)
        pipe = circle.solve_constrained(args.s, args.n, args.tol)
        angle_diff = max(
            (abs(a - b) for a, b in zip(sorted(orc.angles), sorted(pipe.angles))),
            default=0.0,
        )
        results = {
            "oracle_angles": list(orc.angles),
            "pipeline_angles": list(pipe.angles),
            "oracle_norm": orc.norm,
            "pipeline_norm": pipe.norm,
            "max_angle_diff": angle_diff,
            "norm_diff": abs(orc.norm - pipe.norm),
            "start_norms": list(orc.diagnostics.get("start_norms", ())),
        }
    _emit(_envelope("oracle", config, results), args)
    return EXIT_OK


def build_parser() -> _Parser:
    p = _Parser(prog="circlecheb",
                description="Weighted Chebyshev polynomials on the unit circle "
                            "for the weight |z-1|^s, with verification tooling.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json",
                        help="output format (default json; csv for point clouds/tables)")
    common.add_argument("--output", default=None, metavar="PATH",
                        help="write output to PATH atomically instead of stdout")
    common.add_argument("--seed", type=int, default=42, help="seed for randomized starts")
    sub = p.add_subparsers(dest="subcommand", required=True)

    sp = sub.add_parser("solve", parents=[common],
                        help="free + constrained minimizers for |z-1|^s")
    sp.add_argument("--s", type=float, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--tol", type=float, default=1e-12)
    sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("norms", parents=[common], help="norm table over degrees with bound curves")
    sp.add_argument("--s", type=float, required=True)
    sp.add_argument("--n-max", type=int, required=True)
    sp.add_argument("--tol", type=float, default=1e-12)
    sp.set_defaults(func=cmd_norms)

    sp = sub.add_parser("erdos-lax", parents=[common], help="derivative-norm checks for a factors file")
    sp.add_argument("--factors-file", required=True)
    sp.add_argument("--mode", required=True,
                    choices=("equality", "generalized", "turan", "max-point",
                             "polya-szego", "conjecture"))
    sp.add_argument("--tol", type=float, default=1e-8)
    sp.add_argument("--zeta-angle", type=float, default=math.pi,
                    help="argument of the unimodular zeta (polya-szego mode)")
    sp.add_argument("--shift", type=int, default=1,
                    help="power of z multiplying the reciprocal (polya-szego mode)")
    sp.set_defaults(func=cmd_erdos_lax)

    sp = sub.add_parser("zeros", parents=[common], help="zero statistics of the free minimizer")
    sp.add_argument("--s", type=float, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--radial", type=float, action="append",
                    help="radius for radial mass (repeatable; default 0.9)")
    sp.add_argument("--tol", type=float, default=1e-12)
    sp.set_defaults(func=cmd_zeros)

    sp = sub.add_parser("lemniscate", parents=[common], help="Chebyshev data on |z^m - 1| = 1")
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--l", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--tol", type=float, default=1e-12)
    sp.set_defaults(func=cmd_lemniscate)

    sp = sub.add_parser("asymptotics", parents=[common], help="scaled Jacobi-weight norms vs their limit")
    sp.add_argument("--alpha", type=float, required=True)
    sp.add_argument("--beta", type=float, required=True)
    sp.add_argument("--m-max", type=int, required=True)
    sp.add_argument("--m-step", type=int, default=8)
    sp.add_argument("--tol", type=float, default=1e-12)
    sp.set_defaults(func=cmd_asymptotics)

    sp = sub.add_parser("oracle", parents=[common], help="independent minimax solver vs the pipeline")
    sp.add_argument("--s", type=float, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--mode", choices=("free", "constrained"), default="free")
    sp.add_argument("--tol", type=float, default=1e-9)
    sp.add_argument("--warm", action="store_true",
                    help="diagnostic: start from the pipeline answer "
                         "(breaks oracle independence; never used in acceptance)")
    sp.set_defaults(func=cmd_oracle)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except (inequalities.PreconditionError, oracle.OracleGuardError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except (remez.RemezError, circle.ConsistencyError, polynomial.RootFindingError) as exc:
        sys.stderr.write(f"numerical failure: {exc}\n")
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
