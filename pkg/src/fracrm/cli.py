"""Command-line front end.

    fracrm series      dump the HPM levels x_k, y_k
    fracrm trajectory  t,x,y CSV from the series or a reference solver
    fracrm figures     CSV bundles for the reference figures
    fracrm validate    run the validation suites, write a report

Every model flag can also come from ``--config FILE`` holding ``key = value``
lines (keys are flag names without the leading dashes); flags given on the
command line win over the file.
"""

import argparse
import logging
import math
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import figures as figs
from . import validation
from .hpm import ModelParams, hpm_solve
from .oracle import SolverConfig, fabm_solve, rk4
from .output import csv_text, solution_dump

log = logging.getLogger("fracrm")

DEFAULTS = {
    "r": 0.03,
    "K": 10.0,
    "a": 16.0,
    "alpha": 0.7,
    "beta": 0.6,
    "d": 0.01,
    "x0": 1.3,
    "y0": 0.6,
    "m": 1.0,
    "n": 1.0,
    "order": 3,
    "bracket_order": 4,
    "t_max": None,  # command-specific
    "points": 201,
    "steps": None,  # derived from t_max when absent
    "method": "hpm",
    "out": None,
}

INT_KEYS = {"order", "bracket_order", "points", "steps"}
STR_KEYS = {"method", "out"}


class CliError(Exception):
    pass


def number(text):
    """Float parser that also accepts fractions such as 1/3."""
    try:
        return float(Fraction(text.strip()))
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def _convert(key, value):
    if key in STR_KEYS:
        return value
    if key in INT_KEYS:
        return int(value)
    return number(value)


def read_config(path):
    values = {}
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise CliError(f"cannot read config {path}: {exc.strerror}") from None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise CliError(f"{path}:{lineno}: expected 'key = value'")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.lstrip("-").replace("-", "_")
        if key not in DEFAULTS:
            raise CliError(f"{path}:{lineno}: unknown key {key!r}")
        try:
            values[key] = _convert(key, value)
        except (ValueError, argparse.ArgumentTypeError):
            raise CliError(f"{path}:{lineno}: bad value for {key}: {value!r}") from None
    return values


def resolve(args):
    """Merge defaults < config file < explicit flags."""
    merged = dict(DEFAULTS)
    if args.config:
        merged.update(read_config(args.config))
    for key in DEFAULTS:
        v = getattr(args, key, None)
        if v is not None:
            merged[key] = v
    return merged


def build_params(opts):
    try:
        return ModelParams(
            r=opts["r"], K=opts["K"], a=opts["a"], alpha=opts["alpha"],
            beta=opts["beta"], d=opts["d"], delta=opts["x0"], gamma_0=opts["y0"],
            m=opts["m"], n=opts["n"], bracket_order=opts["bracket_order"],
        )
    except ValueError as exc:
        raise CliError(str(exc)) from None


def _emit(text, path):
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise CliError(f"cannot write {path}: {exc.strerror}") from None


def cmd_series(opts):
    params = build_params(opts)
    sol = hpm_solve(params, opts["order"])
    _emit(solution_dump(sol), opts["out"])
    return 0


def _oracle_steps(opts, t_max, points):
    # Output grid points must fall on the solver grid.
    wanted = opts["steps"] or figs.default_steps(t_max)
    stride = max(1, math.ceil(wanted / (points - 1)))
    return stride * (points - 1), stride


def cmd_trajectory(opts):
    params = build_params(opts)
    t_max = opts["t_max"] or figs.DEFAULT_HPM_T_MAX
    points = opts["points"]
    if points < 2 or not t_max > 0:
        raise CliError("need points >= 2 and t-max > 0")
    method = opts["method"]
    if method == "hpm":
        times = np.linspace(0.0, t_max, points)
        x, y = hpm_solve(params, opts["order"])(times)
        x = np.broadcast_to(x, times.shape)
        y = np.broadcast_to(y, times.shape)
    elif method in ("fabm", "rk4"):
        if method == "rk4" and (params.m != 1 or params.n != 1):
            raise CliError(f"rk4 requires m = n = 1 (got m = {params.m}, n = {params.n})")
        steps, stride = _oracle_steps(opts, t_max, points)
        solver = rk4 if method == "rk4" else fabm_solve
        tr = solver(params, SolverConfig(t_max, steps))
        times = tr.times[::stride]
        x, y = tr.x[::stride], tr.y[::stride]
    else:
        raise CliError(f"unknown method {method!r} (hpm, fabm, rk4)")
    _emit(csv_text(["t", "x", "y"], [times, x, y]), opts["out"])
    return 0


def cmd_figures(opts, figure, diag_t_max, n_surface, diagnostics=True):
    params = build_params(opts)
    t_max = opts["t_max"] or figs.DEFAULT_HPM_T_MAX
    outdir = Path(opts["out"] or "figures")
    try:
        outdir.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise CliError(f"cannot create {outdir}: {exc.strerror}") from None
    wanted = figs.FIGURES if figure == "all" else (figure,)
    written = []
    for fig in wanted:
        files = figs.figure_files(fig, params, hpm_order=opts["order"], t_max=t_max,
                                  points=opts["points"], n_surface=n_surface)
        for name, text in files.items():
            _emit(text, outdir / name)
            written.append(name)
    report = [f"series window: t in [0, {t_max:g}], order {opts['order']}"]
    report += [f"wrote {name}" for name in written]
    if diagnostics:
        steps = opts["steps"] or figs.default_steps(diag_t_max)
        for d in figs.trend_diagnostics(params, t_max=diag_t_max, steps=steps):
            report.append(d.line())
    text = "\n".join(report) + "\n"
    _emit(text, outdir / "diagnostics.txt")
    sys.stdout.write(text)
    return 0


def cmd_validate(opts, corrupt_gamma=False):
    params = build_params(opts)
    if corrupt_gamma:
        with validation.corrupted_gamma():
            results = validation.run_validation(params)
    else:
        results = validation.run_validation(params)
    report = validation.format_report(results)
    _emit(report, opts["out"])
    if opts["out"] not in (None, "-"):
        sys.stdout.write(report)
    return 0 if all(r.status != "FAIL" for r in results) else 1


def _model_flags():
    p = argparse.ArgumentParser(add_help=False, allow_abbrev=False)
    g = p.add_argument_group("model")
    for flag in ("r", "K", "a", "alpha", "beta", "d"):
        g.add_argument(f"--{flag}", type=number, default=None)
    g.add_argument("--x0", type=number, default=None, help="initial prey density")
    g.add_argument("--y0", type=number, default=None, help="initial predator density")
    g.add_argument("--m", type=number, default=None, help="prey order in (0, 1], e.g. 1/3")
    g.add_argument("--n", type=number, default=None, help="predator order in (0, 1]")
    g.add_argument("--order", type=int, default=None, help="HPM order (default 3)")
    g.add_argument("--bracket-order", dest="bracket_order", type=int, default=None)
    g.add_argument("--t-max", dest="t_max", type=number, default=None)
    g.add_argument("--points", type=int, default=None)
    g.add_argument("--steps", type=int, default=None, help="solver steps (default h = 1e-3)")
    g.add_argument("--method", choices=("hpm", "fabm", "rk4"), default=None)
    g.add_argument("--out", default=None)
    g.add_argument("--config", default=None, help="file of 'key = value' lines")
    g.add_argument("-v", "--verbose", action="store_true")
    return p


def build_parser():
    common = _model_flags()
    parser = argparse.ArgumentParser(
        prog="fracrm",
        description="Fractional Rosenzweig-MacArthur model: HPM series and reference solvers.",
        allow_abbrev=False,
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("series", parents=[common], help="dump HPM series terms", allow_abbrev=False)
    sub.add_parser("trajectory", parents=[common], help="t,x,y CSV", allow_abbrev=False)
    pf = sub.add_parser("figures", parents=[common], help="figure CSV bundles", allow_abbrev=False)
    pf.add_argument("--figure", default="all", choices=("all",) + figs.FIGURES)
    pf.add_argument("--diag-t-max", type=number, default=figs.DEFAULT_ORACLE_T_MAX,
                    help="window for the oracle trend diagnostics (default 15)")
    pf.add_argument("--surface-orders", type=int, default=figs.DEFAULT_SURFACE_ORDERS,
                    help="number of orders on the surface grids (0.1..1)")
    pf.add_argument("--no-diagnostics", action="store_true")
    pv = sub.add_parser("validate", parents=[common], help="run validation suites", allow_abbrev=False)
    pv.add_argument("--corrupt-gamma", action="store_true", help=argparse.SUPPRESS)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        opts = resolve(args)
        if args.command == "series":
            return cmd_series(opts)
        if args.command == "trajectory":
            return cmd_trajectory(opts)
        if args.command == "figures":
            return cmd_figures(opts, args.figure, args.diag_t_max, args.surface_orders,
                               diagnostics=not args.no_diagnostics)
        return cmd_validate(opts, corrupt_gamma=args.corrupt_gamma)
    except CliError as exc:
        print(f"fracrm: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
