"""Command line interface.

Exit codes: 0 success, 1 input error, 2 computation error.
"""

from __future__ import annotations

import argparse
import csv
import os
import sys
import warnings
from typing import Sequence

import numpy as np

from . import __version__
from .analytic import (
    McConfig,
    auk_fgm_closed,
    auk_fgm_mc,
    auk_fgm_quadrature,
    eta_curve,
    write_eta_csv,
)
from .estimators import DEFAULT_GRID
from .report import analyze, export_curves_csv, simulate_table, write_table_csv
from .resampling import DEFAULT_LEVELS, MIN_REPLICATES
from .sample import SampleError, load_csv
from .samplers import FAMILIES, SamplerError, SamplerSpec
from .svgplot import render_kplot

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_COMPUTE = 2
FGM_METHODS = ("closed", "quadrature", "mc")


def _levels(text: str) -> tuple[float, ...]:
    try:
        vals = tuple(float(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad level list {text!r}") from None
    if any(not 0.0 < v < 1.0 for v in vals):
        raise argparse.ArgumentTypeError("levels must lie in (0, 1)")
    return vals


def _methods(text: str) -> tuple[str, ...]:
    vals = tuple(v.strip() for v in text.split(","))
    bad = [v for v in vals if v not in FGM_METHODS]
    if bad:
        raise argparse.ArgumentTypeError(f"unknown method(s) {bad}; choose from {FGM_METHODS}")
    return vals


def _floats(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad number list {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="multikplot", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="D-vector, indices, K-plot and optional bootstrap for a CSV sample")
    a.add_argument("--input", required=True)
    a.add_argument("--header", action="store_true", help="skip the first row")
    a.add_argument("--x-col", type=int, default=0, help="zero-based column of x (default 0)")
    a.add_argument("--y-col", type=int, default=1, help="zero-based column of y (default 1)")
    a.add_argument("--bootstrap", type=int, default=0, metavar="B", help="bootstrap replicates (0 = none)")
    a.add_argument("--levels", type=_levels, default=DEFAULT_LEVELS)
    a.add_argument("--seed", type=int, default=0)
    a.add_argument("--grid", type=int, default=DEFAULT_GRID)
    a.add_argument("--self-point", choices=("exclude", "include"), default="exclude")
    a.add_argument("--out-dir", required=True)

    s = sub.add_parser("simulate", help="Monte Carlo table of |r|, |tau|, I_AUK and its standardized form")
    s.add_argument("--family", required=True, choices=FAMILIES)
    s.add_argument("--param", type=float, default=None)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--reps", type=int, required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--self-point", choices=("exclude", "include"), default="exclude")
    s.add_argument("--out", required=True)

    f = sub.add_parser("fgm-curve", help="AUK of the FGM copula over a grid of gamma")
    f.add_argument("--gamma-min", type=float, default=-0.99)
    f.add_argument("--gamma-max", type=float, default=0.99)
    f.add_argument("--steps", type=int, default=199)
    f.add_argument("--method", type=_methods, default=("closed",), help="comma-separated: closed,quadrature,mc")
    f.add_argument("--mc-draws", type=int, default=1_000_000)
    f.add_argument("--seed", type=int, default=0)
    f.add_argument("--out", required=True)

    e = sub.add_parser("eta", help="bivariate-normal calibration table (|rho|, I_AUK)")
    e.add_argument("--rho", type=_floats, default=tuple(np.round(np.arange(0, 1.0001, 0.1), 10)))
    e.add_argument("--n-fit", type=int, default=30_000)
    e.add_argument("--n-eval", type=int, default=5_000)
    e.add_argument("--seed", type=int, default=0)
    e.add_argument("--out", required=True)
    return p


def _warn_to_stderr(caught) -> None:
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)


def cmd_analyze(args) -> int:
    if args.grid < 2:
        print("error: --grid must be at least 2", file=sys.stderr)
        return EXIT_INPUT
    if args.bootstrap and args.bootstrap < MIN_REPLICATES:
        print(f"error: --bootstrap needs at least {MIN_REPLICATES} replicates", file=sys.stderr)
        return EXIT_INPUT
    try:
        sample = load_csv(args.input, has_header=args.header, x_col=args.x_col, y_col=args.y_col)
    except SampleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    try:
        report, curves = analyze(
            sample,
            grid=args.grid,
            bootstrap=args.bootstrap or None,
            levels=args.levels,
            seed=args.seed,
            self_point=args.self_point,
        )
    except (ValueError, ArithmeticError) as exc:
        print(f"error: computation failed: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    for msg in report.warnings:
        print(f"warning: {msg}", file=sys.stderr)
    os.makedirs(args.out_dir, exist_ok=True)
    with open(os.path.join(args.out_dir, "report.json"), "w", newline="\n") as fh:
        fh.write(report.to_json())
    render_kplot(curves, os.path.join(args.out_dir, "kplot.svg"))
    export_curves_csv(curves, os.path.join(args.out_dir, "curves.csv"))
    return EXIT_OK


def cmd_simulate(args) -> int:
    try:
        if args.reps < 2:
            raise SamplerError("--reps must be at least 2")
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            spec = SamplerSpec(args.family, args.n, args.seed, args.param)
            spec.draw()  # validate parameters before the loop
        _warn_to_stderr(caught)
    except SamplerError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            rows = simulate_table(spec, args.reps, args.self_point)
    except (ValueError, ArithmeticError) as exc:
        print(f"error: computation failed: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    write_table_csv(rows, args.out)
    return EXIT_OK


def cmd_fgm_curve(args) -> int:
    lo, hi = args.gamma_min, args.gamma_max
    if not (-1.0 < lo <= hi < 1.0) or args.steps < 1 or (args.steps == 1 and lo != hi):
        print("error: need -1 < gamma-min <= gamma-max < 1 and steps >= 1", file=sys.stderr)
        return EXIT_INPUT
    grid = np.linspace(lo, hi, args.steps)
    # snap values that are zero up to rounding so the grid hits gamma = 0 exactly
    grid[np.abs(grid) < 1e-12] = 0.0
    funcs = {
        "closed": auk_fgm_closed,
        "quadrature": auk_fgm_quadrature,
        "mc": lambda g: auk_fgm_mc(g, args.mc_draws, args.seed),
    }
    try:
        cols = {m: [funcs[m](float(g)) for g in grid] for m in args.method}
    except (ValueError, ArithmeticError) as exc:
        print(f"error: computation failed: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    with open(args.out, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["gamma", *args.method])
        for i, g in enumerate(grid.tolist()):
            w.writerow([repr(g), *(repr(cols[m][i]) for m in args.method)])
    return EXIT_OK


def cmd_eta(args) -> int:
    if any(not 0.0 <= r <= 1.0 for r in args.rho):
        print("error: --rho values must lie in [0, 1]", file=sys.stderr)
        return EXIT_INPUT
    rows = eta_curve(args.rho, McConfig(args.n_fit, args.n_eval, args.seed))
    write_eta_csv(rows, args.out)
    return EXIT_OK


COMMANDS = {"analyze": cmd_analyze, "simulate": cmd_simulate, "fgm-curve": cmd_fgm_curve, "eta": cmd_eta}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors; those are input errors here
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    return COMMANDS[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
