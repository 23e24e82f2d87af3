"""Command-line interface: ``renorm-sums <command> ...``.

Exit codes: 0 success, 1 usage error, 2 failed check, 3 numeric divergence.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import __version__, closed_forms, functions, renorm, tau, verify
from .functions import CatalogueError, MultFn
from .renorm import DivergenceError, MissingGrowthError, PoleError
from .sieve import DEFAULT_LIMIT, CapacityError, sieve_spf, trial_division_is_prime
from .special import ConvergenceError, DomainError
from .values import decimal, fmt, is_exact, to_float

EXIT_OK, EXIT_USAGE, EXIT_CHECK, EXIT_DIVERGENCE = 0, 1, 2, 3
PRECISION_MODES = {"auto": "auto", "exact": "exact", "real": "float"}

# parametric families reachable with --params
FAMILIES = {
    "sigma": (functions.sigma, ("a",)),
    "jordan": (functions.jordan, ("n",)),
    "piltz": (functions.piltz, ("n",)),
    "sigma0_power": (functions.sigma0_power, ("n",)),
    "beta_power": (functions.beta_power, ("n",)),
    "ku_phi": (functions.ku_phiv, ("u", "v")),
    "ku_psi": (functions.ku_psiv, ("u", "v")),
    "ku_jordan": (functions.ku_jv, ("u", "v")),
    "ramanujan": (functions.ramanujan_sum, ("n", "s")),
    "sigma_shifted": (functions.sigma_shifted, ("a", "s")),
}


class UsageError(Exception):
    pass


# --- formatting --------------------------------------------------------------------

def cell(v) -> str:
    """Integers verbatim, everything else as a 15-digit decimal."""
    if v is None:
        return ""
    if isinstance(v, int) or (isinstance(v, Fraction) and v.denominator == 1):
        return str(int(v))
    return decimal(v)


def json_value(v):
    if v is None:
        return None
    if isinstance(v, int):
        return v
    if is_exact(v):
        v = Fraction(v)
        if v.denominator == 1:
            return int(v)
        return {"exact": fmt(v), "decimal": to_float(v)}
    return to_float(v)


def show(v) -> str:
    """``num/den (decimal)`` for exact non-integers, plain text otherwise."""
    if is_exact(v) and Fraction(v).denominator != 1:
        return f"{fmt(v)} ({decimal(v)})"
    return cell(v)


def _parse_number(text: str):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        pass
    try:
        return float(text)
    except ValueError:
        raise UsageError(f"not a number: {text!r}") from None


def _parse_params(items: Sequence[str]) -> dict:
    out = {}
    for item in items or ():
        for part in item.split(","):
            if not part:
                continue
            if "=" not in part:
                raise UsageError(f"parameter {part!r} must look like key=value")
            k, v = part.split("=", 1)
            out[k.strip()] = _parse_number(v.strip())
    return out


def _as_int(v):
    if isinstance(v, Fraction) and v.denominator == 1:
        return int(v)
    return v


def resolve_function(name: str, params: dict, tau_limit: int) -> MultFn:
    if name in FAMILIES:
        factory, keys = FAMILIES[name]
        missing = [k for k in keys if k not in params]
        extra = [k for k in params if k not in keys]
        if missing or extra:
            raise UsageError(f"{name} takes parameters {', '.join(keys)}")
        return factory(*(_as_int(params[k]) for k in keys))
    if params:
        raise UsageError(f"{name} takes no parameters")
    try:
        if name in functions.TAU_NAMES:
            return functions.get(name, tau.default_tau_table(tau_limit))
        return functions.get(name)
    except CatalogueError:
        raise UsageError(f"unknown function {name!r}; see the catalog command") from None


# --- commands ----------------------------------------------------------------------

def cmd_eval(args, out) -> int:
    f = resolve_function(args.function, _parse_params(args.params), args.tau_limit)
    ks = args.k
    if any(k < 1 for k in ks):
        raise UsageError("arguments must be positive integers")
    table = sieve_spf(max(2, min(max(ks), args.sieve_limit)))
    vals = [functions.eval_mult(f, k, table if k <= table.limit else None) for k in ks]
    if args.format == "json":
        for k, v in zip(ks, vals):
            out.write(json.dumps({"function": f.name, "k": k, "value": json_value(v)}) + "\n")
    elif args.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["function", "k", "value", "decimal"])
        for k, v in zip(ks, vals):
            w.writerow([f.name, k, fmt(v), cell(v)])
    else:
        for v in vals:
            out.write(show(v) + "\n")
    return EXIT_OK


def cmd_renorm(args, out) -> int:
    f = resolve_function(args.function, _parse_params(args.params), args.tau_limit)
    if args.m < 0 or not trial_division_is_prime(args.p):
        raise UsageError("need a prime p and m >= 0")
    if args.route == "closed_form" and args.m > 0 and closed_forms.closed_form_for(f, args.p) is None:
        raise UsageError(f"no closed form catalogued for {f.name}")
    if args.m == 0:
        res = renorm.RenormResult(Fraction(1), args.route if args.route != "auto" else "rational")
    else:
        if f.a1 is None and args.route != "closed_form":
            raise MissingGrowthError(f"{f.name} has no registered growth exponent a1")
        res = renorm.renorm(f, args.p, args.m, args.route, tol=args.tol, r_max=args.r_max)
    record = {"function": f.name, "p": args.p, "m": args.m, "value": res.value,
              "route": res.route, "truncation_estimate": res.truncation_estimate,
              "terms_used": res.terms_used}
    if args.format == "json":
        payload = dict(record, value=json_value(res.value))
        out.write(json.dumps(payload, sort_keys=True) + "\n")
    elif args.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["function", "p", "m", "value", "decimal", "route", "truncation_estimate"])
        w.writerow([f.name, args.p, args.m, fmt(res.value), cell(res.value), res.route,
                    f"{res.truncation_estimate:.3g}"])
    else:
        out.write(show(res.value) + "\n")
        out.write(f"route: {res.route}\n")
        out.write(f"truncation estimate: {res.truncation_estimate:.3g}\n")
    return EXIT_OK


def _parse_grid(text: str, default_points: int = verify.GRID_POINTS) -> list[int]:
    parts = text.split(":")
    if len(parts) not in (2, 3):
        raise UsageError("grid must be lo:hi or lo:hi:points")
    try:
        lo, hi = int(float(parts[0])), int(float(parts[1]))
        points = int(parts[2]) if len(parts) == 3 else default_points
    except ValueError:
        raise UsageError(f"bad grid {text!r}") from None
    if lo < 1 or hi < lo or points < 1:
        raise UsageError("grid needs 1 <= lo <= hi and points >= 1")
    return verify.log_grid(lo, hi, points)


def _sweep_rows_out(sweep, fmt_name, out):
    cols = ["function", "p", "m", "N", "F_scaled", "F_unscaled", "R_inf", "rho"]
    rows = sweep.rows()
    if fmt_name == "json":
        for row in rows:
            out.write(json.dumps({k: json_value(row[k]) if k not in ("function",) else row[k]
                                  for k in cols}) + "\n")
        return
    w = csv.writer(out, lineterminator="\n")
    w.writerow(cols)
    for row in rows:
        w.writerow([row["function"], row["p"], row["m"], row["N"], cell(row["F_scaled"]),
                    cell(row["F_unscaled"]), fmt(row["R_inf"]), cell(row["rho"])])


def cmd_verify(args, out) -> int:
    mode = PRECISION_MODES[args.precision]
    if args.setup:
        if args.function or args.grid:
            raise UsageError("give either a setup name or --function/--p/--m/--grid")
        if args.setup not in verify.FIGURE_SETUPS:
            raise UsageError(f"unknown setup {args.setup!r}; choose from "
                             + ", ".join(verify.FIGURE_SETUPS))
        setup = verify.FIGURE_SETUPS[args.setup]
        f = resolve_function(setup.function, {}, args.tau_limit)
        grid = setup.grid(args.points)
        p, m = setup.p, setup.m
    else:
        if not (args.function and args.p and args.grid):
            raise UsageError("custom sweeps need --function, --p and --grid")
        f = resolve_function(args.function, _parse_params(args.params), args.tau_limit)
        grid, p, m = _parse_grid(args.grid, args.points), args.p, args.m
    if grid[-1] > args.sieve_limit:
        raise UsageError(f"grid reaches {grid[-1]} beyond --sieve-limit {args.sieve_limit}")
    sweep = verify.deviation_sweep(f, p, m, grid, route=args.route,
                                   table=sieve_spf(max(grid[-1], 2)), mode=mode)
    _sweep_rows_out(sweep, args.format, out)
    if not args.check:
        return EXIT_OK
    if args.setup:
        check = verify.check_figure(sweep, args.setup)
        ok = check.passed
        msg = (f"{args.setup}: |rho| {check.rho_first:.3e} -> {check.rho_final:.3e}, "
               f"last-decade max {check.last_decade_max:.3e}, tolerance {check.tolerance:.3e}")
    else:
        if args.tol is None:
            raise UsageError("--check on a custom sweep needs --tol")
        worst = max((abs(to_float(r)) for _, r in sweep.defined()), default=0.0)
        ok = worst <= args.tol
        msg = f"max |rho| {worst:.3e}, tolerance {args.tol:.3e}"
    sys.stderr.write(("PASS " if ok else "FAIL ") + msg + "\n")
    return EXIT_OK if ok else EXIT_CHECK


def _routes(f: MultFn) -> list[str]:
    routes = []
    if f.a1 is not None:
        routes += ["series", "rational"]
    if f.name in closed_forms.CLOSED_FORM_OF:
        routes.append("closed_form")
    return routes


def _frac_text(v) -> str:
    return "-" if v is None else fmt(Fraction(v))


def catalog_entries(tau_limit: int = 1000) -> list[dict]:
    tab = tau.default_tau_table(tau_limit)
    fs = list(functions.CATALOGUE.values()) + [functions.get(n, tab) for n in functions.TAU_NAMES]
    rows = []
    for f in fs:
        g = f.growth
        rows.append({
            "name": f.name,
            "a1": None if f.a1 is None else fmt(f.a1),
            "b1": fmt(Fraction(f.b1)),
            "a2": None if f.a2 is None else fmt(f.a2),
            "b2": None if f.b2 is None else fmt(f.b2),
            "F": f.F_text or None,
            "kind": f.kind,
            "completely_multiplicative": f.completely_multiplicative,
            "routes": _routes(f),
            "growth": None if g is None else {
                "gamma1": fmt(g.gamma1), "K1": g.K1_text, "r_star": g.r_star},
        })
    return rows


def catalog_row_text(row: dict) -> str:
    parts = [f"a1={row['a1'] if row['a1'] is not None else '-'}"]
    g = row["growth"]
    if g:
        parts += [f"gamma1={g['gamma1']}", f"K1={g['K1']}", f"r*={g['r_star']}"]
    parts += [f"b1={row['b1']}", f"a2={row['a2'] or '-'}", f"b2={row['b2'] or '-'}"]
    if row["F"]:
        parts.append(f"F={row['F']}")
    parts.append("routes=" + ("|".join(row["routes"]) or "-"))
    return f"{row['name']}: " + ", ".join(parts)


def cmd_catalog(args, out) -> int:
    rows = catalog_entries()
    if args.json or args.format == "json":
        out.write(json.dumps({"schema": verify.REPORT_SCHEMA, "functions": rows},
                             indent=2, sort_keys=True) + "\n")
    elif args.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        cols = ["name", "a1", "b1", "a2", "b2", "gamma1", "K1", "r_star", "F", "routes"]
        w.writerow(cols)
        for r in rows:
            g = r["growth"] or {}
            w.writerow([r["name"], r["a1"] or "", r["b1"], r["a2"] or "", r["b2"] or "",
                        g.get("gamma1", ""), g.get("K1", ""), g.get("r_star", ""),
                        r["F"] or "", "|".join(r["routes"])])
    else:
        for r in rows:
            out.write(catalog_row_text(r) + "\n")
    return EXIT_OK


def cmd_acceptance(args, out) -> int:
    config = verify.AcceptanceConfig(only=args.only or None, sieve_limit=args.sieve_limit,
                                     tau_limit=args.tau_limit, threads=args.threads)
    if not verify.select_checks(config.only):
        raise UsageError(f"no criteria match {args.only}")
    report = verify.run_acceptance_suite(config)
    lines = report.json_lines() if args.format == "json" else report.lines()
    for line in lines:
        out.write(line + "\n")
    return EXIT_OK if report.passed else EXIT_CHECK


# --- parser ------------------------------------------------------------------------

def _positive(text: str) -> int:
    try:
        v = int(float(text))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--sieve-limit", type=_positive, default=DEFAULT_LIMIT)
    common.add_argument("--tau-limit", type=_positive, default=tau.DEFAULT_TAU_LIMIT)
    common.add_argument("--format", choices=("text", "csv", "json"), default="text")
    common.add_argument("--threads", type=_positive, default=os.cpu_count() or 1)
    common.add_argument("--precision", choices=tuple(PRECISION_MODES), default="auto",
                        help="summation arithmetic: auto, exact rationals, or floating point")

    parser = _Parser(prog="renorm-sums", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("eval", parents=[common], help="evaluate f(k)")
    p.add_argument("function")
    p.add_argument("k", type=int, nargs="+")
    p.add_argument("--params", action="append", default=[], metavar="KEY=VALUE")
    p.set_defaults(run=cmd_eval)

    p = sub.add_parser("renorm", parents=[common], help="asymptotic renormalization R_inf(f; p^m)")
    p.add_argument("function")
    p.add_argument("p", type=int)
    p.add_argument("m", type=int)
    p.add_argument("--route", choices=("auto", "series", "rational", "closed_form"), default="auto")
    p.add_argument("--params", action="append", default=[], metavar="KEY=VALUE")
    p.add_argument("--tol", type=float, default=renorm.DEFAULT_TOL)
    p.add_argument("--r-max", type=_positive, default=renorm.DEFAULT_R_MAX)
    p.set_defaults(run=cmd_renorm)

    p = sub.add_parser("verify", parents=[common], help="relative-deviation sweep as CSV")
    p.add_argument("setup", nargs="?", help="named setup: " + ", ".join(verify.FIGURE_SETUPS))
    p.add_argument("--function")
    p.add_argument("--p", type=int)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--grid", help="lo:hi or lo:hi:points (log-spaced)")
    p.add_argument("--points", type=_positive, default=verify.GRID_POINTS)
    p.add_argument("--route", choices=("auto", "series", "rational", "closed_form"), default="auto")
    p.add_argument("--params", action="append", default=[], metavar="KEY=VALUE")
    p.add_argument("--check", action="store_true", help="exit 2 when the tolerance is breached")
    p.add_argument("--tol", type=float, help="tolerance for --check on custom sweeps")
    p.set_defaults(run=cmd_verify)

    p = sub.add_parser("catalog", parents=[common], help="list catalogued functions")
    p.add_argument("--json", action="store_true")
    p.set_defaults(run=cmd_catalog)

    p = sub.add_parser("acceptance", parents=[common], help="run the acceptance suite")
    p.add_argument("--only", nargs="*", help="criterion ids or tags (tau, figures, ...)")
    p.set_defaults(run=cmd_acceptance)
    return parser


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.run(args, out)
    except UsageError as exc:
        sys.stderr.write(f"renorm-sums: {exc}\n")
        return EXIT_USAGE
    except (DivergenceError, PoleError, ConvergenceError) as exc:
        sys.stderr.write(f"renorm-sums: divergence: {exc}\n")
        return EXIT_DIVERGENCE
    except (MissingGrowthError, DomainError, CapacityError, tau.TauCapacityError,
            verify.UndefinedDeviationError, KeyError, ValueError) as exc:
        sys.stderr.write(f"renorm-sums: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
