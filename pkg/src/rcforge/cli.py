"""Command-line driver: ``rcforge {rc,verify,genop,constants,radius}``.

Every command prints a JSON report (``constants`` defaults to CSV).  Exit
codes: 0 pass, 1 verification failure, 2 usage or domain error, 3 input
that fails to parse.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from . import verify as V
from .brackets import WeightPair, rc_apply, rc_coefficients
from .constants import a_ell, a_ell_11, a_sequence, c_ell, radius_estimate
from .contour import HSeries, QuadratureError, hseries_from_a, taylor_in_t, transform_T, transform_Th
from .polynomial import BivariatePoly
from .report import Report, timed

EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_PARSE = 0, 1, 2, 3

# Command-line spellings accepted next to the descriptive library names.
CONVENTION_ALIASES = {"paper": "printed"}
SEQUENCE_ALIASES = {"thm33": "closed_form"}
LEVEL_ALIASES = {"prop23": "transform", "prop51": "kernel_series"}


class InputParseError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _grid(text: str) -> tuple:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"grid must be comma-separated integers, got {text!r}")


def _complex(text: str) -> complex:
    s = text.strip().replace(" ", "")
    try:
        if "," in s:
            re, im = s.split(",")
            return complex(float(re), float(im))
        return complex(s.replace("i", "j"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}")


def _positive_float(text: str) -> float:
    v = float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def load_poly(path: str) -> BivariatePoly:
    try:
        with open(path) as fh:
            return BivariatePoly.from_dict(json.load(fh))
    except OSError as exc:
        raise InputParseError(f"cannot read {path}: {exc}")
    except (json.JSONDecodeError, KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise InputParseError(f"malformed polynomial file {path}: {exc!r}")


# ---------------------------------------------------------------------------
# commands


def cmd_rc(args) -> Report:
    w = WeightPair(args.l1, args.l2)
    params = {"l1": args.l1, "l2": args.l2, "ell": args.ell}
    if args.action == "coeffs":
        rep = Report("rc coeffs", params)
        with timed(rep):
            coeffs = rc_coefficients(w, args.ell).coeffs
            rep.add({"ell": args.ell, "coeffs": [str(c) for c in coeffs]})
        return rep
    f = load_poly(args.poly)
    params["poly"] = f.to_dict()
    rep = Report("rc apply", params)
    with timed(rep):
        rep.add({"ell": args.ell, "result": rc_apply(w, args.ell, f).to_dict()})
    return rep


def _verify_tol(args, default):
    return default if args.tol is None else args.tol


def cmd_verify(args) -> Report:
    rep = _run_suite(args)
    rep.command = f"verify {args.suite}"
    return rep


def _run_suite(args) -> Report:
    suite, grid, seed = args.suite, args.grid, args.seed
    kw = {"seed": seed}
    if suite == "thm21":
        return V.verify_reconstruction(grid=grid or (4, 4, 5), tol=_verify_tol(args, 1e-9), **kw)
    if suite == "thm33":
        return V.verify_closed_form_operator(grid=grid or (3, 3, 6), tol=_verify_tol(args, 1e-7), **kw)
    if suite == "thm52":
        return V.verify_series_operator(grid=grid or (3, 3, 5), tol=_verify_tol(args, 1e-7),
                                        convention=_convention(args, "both"), **kw)
    if suite == "lemma32":
        return V.verify_kernel_expansion(seed=seed)
    if suite == "lemma22":
        return V.verify_covariance("kernel", grid=grid or (4, 4, 4), tol=args.tol,
                                   convention=_convention(args, "both"), **kw)
    if suite == "covariance":
        level = LEVEL_ALIASES.get(args.level, args.level)
        return V.verify_covariance(level, grid=grid or (4, 4, 4), tol=args.tol,
                                   convention=_convention(args, "both"), **kw)
    if suite == "jacobi":
        return V.verify_jacobi(grid=grid or (5, 5, 8), tol=_verify_tol(args, 1e-10))
    if suite == "ud":
        return V.verify_admissible_region()
    if suite == "constants":
        return V.verify_constants()
    if suite == "injectivity":
        g = grid or (4, 4, 4)
        return V.verify_injectivity(dmax=g[2] if len(g) > 2 else 4, grid=g[:2])
    raise ValueError(f"unknown suite {suite!r}")


def _convention(args, default: str) -> str:
    return CONVENTION_ALIASES.get(args.convention, args.convention) if args.convention else default


def _hseries(args, w) -> Optional[HSeries]:
    if args.seq is None:
        return None
    kind = SEQUENCE_ALIASES.get(args.seq, args.seq)
    return hseries_from_a(w, a_sequence(kind, w, args.L), _convention(args, "corrected"))


def cmd_genop(args) -> Report:
    w = WeightPair(args.l1, args.l2)
    f = load_poly(args.poly)
    params = {"l1": args.l1, "l2": args.l2, "poly": f.to_dict(), "z": args.z, "r": args.r,
              "seq": args.seq, "L": args.L if args.seq else None}
    if args.action == "eval":
        params["t"] = args.t
        rep = Report("genop eval", params)
        with timed(rep):
            h = _hseries(args, w)
            if h is None:
                value, info = transform_T(w, f, args.z, args.t, args.r, full_output=True)
            else:
                value, info = transform_Th(w, h, f, args.z, args.t, args.r, full_output=True)
            rep.add({"value": value, "nodes_used": info.nodes, "est_error": info.est_error})
        return rep
    params.update(K=args.K, rho_t=args.rho_t)
    rep = Report("genop taylor", params)
    with timed(rep):
        coeffs, info = taylor_in_t(w, f, args.z, args.K, args.rho_t, args.r, h=_hseries(args, w),
                                   full_output=True)
        rep.add({"coeffs": coeffs, "t_nodes": info["t_nodes"], "est_error": info["est_error"]})
    return rep


CONSTANTS_COLUMNS = ["ell", "c", "r", "a_squared", "a_float"]


def cmd_constants(args) -> Report:
    rep = Report("constants", {"l1": args.l1, "l2": args.l2, "lmax": args.lmax})
    with timed(rep):
        for ell in range(args.lmax + 1):
            if (args.l1, args.l2) == (1, 1):
                a2, a = a_ell_11(ell)
                rep.add({"ell": ell, "c": c_ell((1, 1), ell), "r": "", "a_squared": a2, "a_float": a})
            else:
                row = a_ell((args.l1, args.l2), ell)
                rep.add({"ell": ell, "c": row.c, "r": row.r, "a_squared": row.a_squared, "a_float": row.a_float})
    if (args.l1, args.l2) == (1, 1):
        rep.notes.append("r is undefined at weight 1; a_squared is the lambda -> 1 limit")
    return rep


def cmd_radius(args) -> Report:
    rep = Report("radius", {"seq": args.seq, "l1": args.l1, "l2": args.l2, "L": args.L})
    with timed(rep):
        est = radius_estimate(SEQUENCE_ALIASES.get(args.seq, args.seq), args.L, (args.l1, args.l2))
        rep.add({"inverse_radius": est.inverse_radius, "radius": est.radius, "radius_zero": est.radius_zero,
                 "summary": "radius ≈ 0" if est.radius_zero else f"radius ≈ {est.radius:.4f}"})
    return rep


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="rcforge", description="Rankin-Cohen brackets: exact coefficients, contour "
                                            "transforms and verification sweeps.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    rc = sub.add_parser("rc", help="bracket coefficients or action on a polynomial")
    rc.add_argument("action", choices=["coeffs", "apply"])
    rc.add_argument("--l1", type=int, required=True)
    rc.add_argument("--l2", type=int, required=True)
    rc.add_argument("--ell", type=int, required=True)
    rc.add_argument("--poly", help="polynomial JSON file (for apply)")

    ver = sub.add_parser("verify", help="run a verification sweep")
    ver.add_argument("suite", choices=["thm21", "thm33", "thm52", "covariance", "lemma22", "jacobi", "lemma32",
                                       "ud", "constants", "injectivity"])
    ver.add_argument("--grid", type=_grid, help="comma-separated grid bounds, e.g. 4,4,5")
    ver.add_argument("--tol", type=_positive_float)
    ver.add_argument("--seed", type=int, default=7)
    ver.add_argument("--level", choices=["kernel", "group", "infinitesimal", "transform", "kernel_series",
                                         *LEVEL_ALIASES],
                     default="kernel", help="covariance tier")
    ver.add_argument("--convention", choices=["printed", "corrected", "both", *CONVENTION_ALIASES],
                     help="printed or corrected reading of the two suspected misprints (default both)")

    gen = sub.add_parser("genop", help="evaluate the generating operator or its Taylor coefficients")
    gen.add_argument("action", choices=["eval", "taylor"])
    gen.add_argument("--l1", type=int, required=True)
    gen.add_argument("--l2", type=int, required=True)
    gen.add_argument("--poly", required=True)
    gen.add_argument("--z", type=_complex, required=True, help="point, e.g. 1+1j or 1,1")
    gen.add_argument("--t", type=_complex, default=0j)
    gen.add_argument("--r", type=_positive_float, default=1.0, help="contour radius")
    gen.add_argument("--K", type=int, default=6)
    gen.add_argument("--rho-t", dest="rho_t", type=_positive_float, default=0.2)
    gen.add_argument("--seq", choices=["unit", "closed_form", "unitary", *SEQUENCE_ALIASES],
                     help="use T^(h) with this normalising sequence instead of the closed form")
    gen.add_argument("--L", type=int, default=8, help="truncation of h")
    gen.add_argument("--convention", choices=["printed", "corrected", *CONVENTION_ALIASES])

    con = sub.add_parser("constants", help="table of c, r, a^2, a")
    con.add_argument("--l1", type=int, required=True)
    con.add_argument("--l2", type=int, required=True)
    con.add_argument("--lmax", type=int, required=True)
    con.add_argument("--format", choices=["csv", "json"], default="csv")

    rad = sub.add_parser("radius", help="convergence-radius estimate for a normalising sequence")
    rad.add_argument("--seq", choices=["unit", "closed_form", "unitary", *SEQUENCE_ALIASES], required=True)
    rad.add_argument("--l1", type=int, default=1)
    rad.add_argument("--l2", type=int, default=1)
    rad.add_argument("--L", type=int, default=100)
    return p


COMMANDS = {"rc": cmd_rc, "verify": cmd_verify, "genop": cmd_genop, "constants": cmd_constants,
            "radius": cmd_radius}


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "rc" and args.action == "apply" and not args.poly:
        parser.error("rc apply needs --poly")
    try:
        rep = COMMANDS[args.command](args)
    except InputParseError as exc:
        print(f"rcforge: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except QuadratureError as exc:
        print(f"rcforge: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (ValueError, ArithmeticError) as exc:
        print(f"rcforge: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.command == "constants" and args.format == "csv":
        sys.stdout.write(rep.to_csv(CONSTANTS_COLUMNS))
    else:
        print(rep.to_json())
    return EXIT_PASS if rep.passed else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
