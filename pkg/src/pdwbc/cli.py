"""``pdwbc`` command line.

Exit codes: 0 success, 1 an identity failed, 2 usage or domain error, 3 resource guard.
Failures print a one-line JSON record on stderr.
"""
from __future__ import annotations

import argparse
import csv
import json
import sys
from decimal import Decimal, localcontext
from fractions import Fraction

from . import asymptotics as asy
from .errors import PdwbcError, ResourceGuardError
from .lattice_oracle import LatticeSpec, mc_sample_exits, z_exitpattern_bruteforce
from .onepoint import (
    g_finite_N,
    g_from_exit_sum,
    g_jacobi,
    g_residue_homogeneous,
    g_series,
    g_value,
    z_exit_coordinate,
    z_exit_homogeneous,
)
from .partition_functions import partition_function
from .scalar import as_scalar
from .verification import SUITES, run_suites

EXIT_OK, EXIT_IDENTITY, EXIT_USAGE, EXIT_GUARD = 0, 1, 2, 3
CSV_SCHEMA = "# schema=1"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _rational(text: str) -> Fraction:
    try:
        return as_scalar(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from exc


def _rational_list(text: str) -> list[Fraction]:
    return [_rational(x) for x in text.split(",") if x.strip()]


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a list of integers: {text!r}") from exc


def _int_range(text: str) -> range:
    """``a:b`` inclusive, or a single integer."""
    try:
        lo, _, hi = text.partition(":")
        return range(int(lo), int(hi or lo) + 1)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a range a:b: {text!r}") from exc


def decimal_string(x: Fraction, digits: int) -> str:
    with localcontext() as ctx:
        ctx.prec = max(digits, 1)
        return str(Decimal(x.numerator) / Decimal(x.denominator))


def _emit_value(out, args, value: Fraction, **extra):
    if args.format == "json":
        record = {"value": str(value), "decimal": decimal_string(value, args.digits), **extra}
        out.write(json.dumps(record, sort_keys=True) + "\n")
    elif args.format == "csv":
        out.write(CSV_SCHEMA + "\n")
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["value", "decimal", *extra])
        w.writerow([str(value), decimal_string(value, args.digits), *extra.values()])
    else:
        out.write(f"{value}\n{decimal_string(value, args.digits)}\n")


def _csv_table(out, header, rows):
    out.write(CSV_SCHEMA + "\n")
    w = csv.writer(out, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def cmd_g(args, out) -> int:
    if args.repr == "finite-n" and args.t_list:
        if args.nu_count is None:
            raise UsageError("--repr finite-n needs --nu-count")
        _emit_value(out, args, g_finite_N(args.t_list, args.nu_count, args.m), repr=args.repr)
        return EXIT_OK
    if args.t is None:
        if args.repr != "series":
            raise UsageError("only --repr series works without --t")
        out.write(json.dumps({"m": args.m, "s": args.s, "coefficients": g_series(args.m, args.s).to_list()}) + "\n")
        return EXIT_OK
    if args.repr == "series":
        value = g_value(args.m, args.s, args.t)
    elif args.repr == "residue":
        value = g_residue_homogeneous(args.m, args.s, args.t)
    elif args.repr == "jacobi":
        value = g_jacobi(args.m, args.s, args.t)
    else:
        if args.nu_count is None:
            raise UsageError("--repr finite-n needs --nu-count")
        value = g_from_exit_sum(args.m, args.s, args.t, args.nu_count, finite=True)
    _emit_value(out, args, value, repr=args.repr)
    return EXIT_OK


def cmd_z(args, out) -> int:
    f = args.formula
    homogeneous = f == "hankel" or (f == "bruteforce" and args.t is not None)
    if homogeneous and (args.s is None or args.t is None):
        raise UsageError(f"--formula {f} with a homogeneous weight needs --s and --t")
    if homogeneous:
        res = partition_function(f, t=args.t, s=args.s, N=args.n)
    elif f == "partial":
        res = partition_function(f, ts=args.t_list, N=args.n)
    else:
        if not (args.lambdas and args.nus):
            raise UsageError(f"--formula {f} needs --lambdas and --nus (distinct parameters)")
        res = partition_function(f, lambdas=args.lambdas, nus=args.nus)
    _emit_value(out, args, res.value, formula=res.formula_tag)
    return EXIT_OK


def cmd_exit(args, out) -> int:
    pattern = args.pattern
    if args.method == "bruteforce":
        if args.t_list:
            spec = LatticeSpec.from_row_t(args.t_list, pattern[-1])
        else:
            spec = LatticeSpec.homogeneous(len(pattern), pattern[-1], args.t)
        value = z_exitpattern_bruteforce(spec, pattern)
    elif args.t_list:
        value = z_exit_coordinate(pattern, args.t_list)
    elif args.t is not None:
        value = z_exit_homogeneous(pattern, args.t)
    else:
        raise UsageError("exit needs --t-list or --t")
    _emit_value(out, args, value, pattern=",".join(map(str, pattern)))
    return EXIT_OK


def cmd_verify(args, out) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    reports = run_suites(names, max_s=args.max_s)
    for rep in sorted(reports, key=lambda r: r.name):
        out.write(rep.summary() + "\n")
        for failure in rep.failures:
            out.write(f"  FAILED {failure}\n")
    return EXIT_OK if all(r.ok for r in reports) else EXIT_IDENTITY


def cmd_mc(args, out) -> int:
    hist = mc_sample_exits(args.s, float(args.t), args.samples, seed=args.seed)
    out.write(CSV_SCHEMA + "\n")
    out.write(f"# s={args.s} t={args.t} samples={hist.n_samples} valid={hist.n_valid} flagged={hist.n_flagged} seed={args.seed}\n")
    out.write(hist.to_csv())
    return EXIT_OK


def cmd_asym(args, out) -> int:
    t = args.t
    if args.mode == "rate":
        grid = args.grid or [Fraction(1, 2), Fraction(2)]
        rows = []
        for mu in grid:
            m = int(mu * args.s)
            est = asy.g_asymptotic(m, args.s, t)
            rows.append([
                f"{float(mu):.6g}", str(t),
                f"{asy.phi1(m / args.s, t):.12g}", f"{asy.phi0(m / args.s, t):.12g}",
                f"{asy.exact_log_deviation(m, args.s, t):.12g}", f"{est.log_correction:.12g}",
            ])
        _csv_table(out, ["mu", "t", "phi1", "phi0", "log_exact", "log_predicted"], rows)
    else:
        grid = args.grid or [Fraction(v) for v in (-2, -1, 0, 1, 2)]
        rows = []
        for v in grid:
            m = asy.window_column(args.s, float(v))
            if m < 1:
                raise UsageError(f"v={v} puts the column below 1 at s={args.s}")
            rows.append([
                f"{float(v):.6g}", str(t), args.s,
                f"{float(g_value(m, args.s, t)):.12g}", f"{asy.erfc_scaling(float(v), t):.12g}",
            ])
        _csv_table(out, ["v", "t", "s", "g_exact", "erfc_limit"], rows)
    return EXIT_OK


def cmd_table(args, out) -> int:
    rows = []
    if args.quantity == "g":
        for m in args.m_range:
            for s in args.s_range:
                v = g_value(m, s, args.t)
                rows.append([m, s, str(v), decimal_string(v, args.digits)])
        _csv_table(out, ["m", "s", "g_exact", "g_decimal"], rows)
    else:
        for N in args.m_range:
            for s in args.s_range:
                if s > N:
                    continue
                v = partition_function("hankel", t=args.t, s=s, N=N).value
                rows.append([N, s, str(v), decimal_string(v, args.digits)])
        _csv_table(out, ["N", "s", "z_exact", "z_decimal"], rows)
    return EXIT_OK


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("--digits", type=int, default=12, help="significant digits of the decimal display")

    p = _Parser(prog="pdwbc", description="Exact partition and one-point functions of the rational six-vertex model with partial domain walls.")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("g", parents=[common], help="boundary one-point function")
    g.add_argument("--m", type=int, required=True)
    g.add_argument("--s", type=int, required=True)
    g.add_argument("--t", type=_rational, help="omit to print the polynomial coefficients")
    g.add_argument("--repr", choices=("series", "residue", "jacobi", "finite-n"), default="series")
    g.add_argument("--nu-count", type=int, help="number of columns N for --repr finite-n")
    g.add_argument("--t-list", type=_rational_list, help="distinct row parameters for --repr finite-n")

    z = sub.add_parser("z", parents=[common], help="partition function")
    z.add_argument("--s", type=int)
    z.add_argument("--n", type=int, required=True)
    z.add_argument("--t", type=_rational)
    z.add_argument("--formula", choices=("fw", "kostov", "hankel", "bruteforce", "partial"), default="hankel")
    z.add_argument("--t-list", type=_rational_list)
    z.add_argument("--lambdas", type=_rational_list)
    z.add_argument("--nus", type=_rational_list)

    e = sub.add_parser("exit", parents=[common], help="partition function with pinned exit columns")
    e.add_argument("--pattern", type=_int_list, required=True)
    e.add_argument("--t-list", type=_rational_list, help="distinct row parameters (coordinate formula)")
    e.add_argument("--t", type=_rational, help="homogeneous weight (multiple-integral formula)")
    e.add_argument("--method", choices=("formula", "bruteforce"), default="formula")

    v = sub.add_parser("verify", help="run seeded identity sweeps")
    v.add_argument("--suite", choices=("all", *SUITES), default="all")
    v.add_argument("--max-s", type=int, default=8)

    mc = sub.add_parser("mc", help="Monte Carlo exit histogram on the semi-infinite strip")
    mc.add_argument("--s", type=int, required=True)
    mc.add_argument("--t", type=_rational, required=True)
    mc.add_argument("--samples", type=int, default=100_000)
    mc.add_argument("--seed", type=int, default=0)

    a = sub.add_parser("asym", help="large-s rate functions and the erfc window")
    a.add_argument("--mode", choices=("rate", "window"), default="rate")
    a.add_argument("--s", type=int, default=100)
    a.add_argument("--t", type=_rational, default=Fraction(1, 3))
    a.add_argument("--grid", type=_rational_list, help="mu values (rate) or v values (window)")

    tb = sub.add_parser("table", parents=[common], help="CSV grid of exact values")
    tb.add_argument("--quantity", choices=("g", "z"), default="g")
    tb.add_argument("--m-range", type=_int_range, default=range(1, 9), help="m (or N for z), as a:b")
    tb.add_argument("--s-range", type=_int_range, default=range(1, 6))
    tb.add_argument("--t", type=_rational, required=True)
    return p


COMMANDS = {
    "g": cmd_g,
    "z": cmd_z,
    "exit": cmd_exit,
    "verify": cmd_verify,
    "mc": cmd_mc,
    "asym": cmd_asym,
    "table": cmd_table,
}


def _fail(err, code: int, kind: str, message: str) -> int:
    err.write(json.dumps({"error": kind, "message": message, "exit_code": code}, sort_keys=True) + "\n")
    return code


def run(argv=None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args, out)
    except UsageError as exc:
        return _fail(err, EXIT_USAGE, "usage", str(exc))
    except ResourceGuardError as exc:
        return _fail(err, EXIT_GUARD, type(exc).__name__, str(exc))
    except (PdwbcError, ArithmeticError) as exc:
        return _fail(err, EXIT_USAGE, type(exc).__name__, str(exc))


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
