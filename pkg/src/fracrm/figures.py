"""Data for the reference prey/predator figures, plus trend diagnostics.

Curves and surfaces come from the HPM series. The qualitative statements
made about the figures are checked on fractional predictor-corrector
trajectories over a longer window and reported as PASS or INCONCLUSIVE;
they are never treated as hard failures.
"""

import math
from dataclasses import dataclass

import numpy as np

from .hpm import hpm_solve
from .oracle import SolverConfig, fabm_solve
from .output import csv_text, fmt_float

FIGURES = ("1i", "1ii", "2i", "2ii", "3i", "3ii", "4")
CURVE_ORDERS = (1 / 3, 1 / 2, 2 / 3, 1.0)
CURVE_LABELS = ("1_3", "1_2", "2_3", "1")

DEFAULT_HPM_T_MAX = 5.0
DEFAULT_ORACLE_T_MAX = 15.0
DEFAULT_SURFACE_ORDERS = 19  # 0.1, 0.15, ..., 1.0


def default_steps(t_max, h=1e-3):
    return max(1, int(math.ceil(t_max / h - 1e-9)))


def surface_orders(count):
    return np.linspace(0.1, 1.0, count)


def _series_xy(params, order, times):
    sol = hpm_solve(params, order)
    x, y = sol(times)
    return np.broadcast_to(x, times.shape), np.broadcast_to(y, times.shape)


def figure_files(figure, params, *, hpm_order=3, t_max=DEFAULT_HPM_T_MAX, points=201,
                 n_surface=DEFAULT_SURFACE_ORDERS):
    """Return {file name: CSV text} for one figure panel."""
    if figure not in FIGURES:
        raise ValueError(f"unknown figure {figure!r}; choose from {', '.join(FIGURES)}")
    if points < 2:
        raise ValueError("points must be >= 2")
    times = np.linspace(0.0, t_max, points)
    files = {}

    if figure in ("1i", "1ii", "3i"):
        vary = "m" if figure == "1i" else "n"
        var = "y" if figure == "3i" else "x"
        for q, label in zip(CURVE_ORDERS, CURVE_LABELS):
            p = params.with_orders(q, 1.0) if vary == "m" else params.with_orders(1.0, q)
            x, y = _series_xy(p, hpm_order, times)
            files[f"fig{figure}_{vary}{label}.csv"] = csv_text(
                ["t", var], [times, y if var == "y" else x]
            )
    elif figure in ("2i", "2ii", "3ii"):
        vary = "m" if figure == "2i" else "n"
        var = "y" if figure == "3ii" else "x"
        cols = ([], [], [])
        for q in surface_orders(n_surface):
            p = params.with_orders(q, 1.0) if vary == "m" else params.with_orders(1.0, q)
            x, y = _series_xy(p, hpm_order, times)
            cols[0].extend(times)
            cols[1].extend([q] * len(times))
            cols[2].extend(y if var == "y" else x)
        files[f"fig{figure}_surface.csv"] = csv_text(["t", vary, var], cols)
    else:
        for q, label in zip(CURVE_ORDERS, CURVE_LABELS):
            x, y = _series_xy(params.with_orders(q, q), hpm_order, times)
            files[f"fig4_mn{label}.csv"] = csv_text(["t", "x", "y"], [times, x, y])
    return files


@dataclass(frozen=True)
class Diagnostic:
    name: str
    claim: str
    status: str  # PASS, INCONCLUSIVE or INFO
    detail: str

    def line(self):
        return f"{self.name}: {self.status}  [{self.claim}] {self.detail}"


def _strictly_increasing(v):
    return all(b > a for a, b in zip(v, v[1:]))


def trend_diagnostics(params, *, t_max=DEFAULT_ORACLE_T_MAX, steps=None):
    """Evaluate the qualitative figure claims on oracle trajectories."""
    steps = steps or default_steps(t_max)
    cfg = SolverConfig(t_max, steps)
    cache = {}

    def solve(m, n):
        if (m, n) not in cache:
            cache[(m, n)] = fabm_solve(params.with_orders(m, n), cfg)
        return cache[(m, n)]

    labels = ", ".join(fmt_float(round(q, 4)) for q in CURVE_ORDERS)
    out = []

    # prey peak time versus m (n = 1)
    peaks = []
    interior = True
    for q in CURVE_ORDERS:
        tr = solve(q, 1.0)
        k = int(np.argmax(tr.x))
        interior &= 0 < k < len(tr.times) - 1
        peaks.append(float(tr.times[k]))
    ok = interior and _strictly_increasing(peaks)
    out.append(Diagnostic(
        "fig1i", "prey peaks earlier for smaller m",
        "PASS" if ok else "INCONCLUSIVE",
        f"peak times for m = {labels}: {[fmt_float(round(p, 4)) for p in peaks]}"
        + ("" if interior else " (a peak sits on the window edge)"),
    ))

    # maximum prey density versus n (m = 1)
    maxima = []
    for q in CURVE_ORDERS:
        tr = solve(1.0, q)
        maxima.append(float(np.max(tr.x)))
    out.append(Diagnostic(
        "fig1ii", "maximum prey density grows with n",
        "PASS" if _strictly_increasing(maxima) else "INCONCLUSIVE",
        f"max x for n = {labels}: {[fmt_float(round(v, 8)) for v in maxima]}",
    ))

    # early predator growth versus n (m = 1)
    t_early = min(0.1, t_max)
    k_early = int(round(t_early / cfg.h))
    gains = []
    for q in CURVE_ORDERS:
        tr = solve(1.0, q)
        gains.append(float(tr.y[k_early] - tr.y[0]))
    ok = all(b < a for a, b in zip(gains, gains[1:]))
    out.append(Diagnostic(
        "fig3i", "predator grows fastest initially for smallest n",
        "PASS" if ok else "INCONCLUSIVE",
        f"y({fmt_float(cfg.times[k_early])}) - y(0) for n = {labels}: "
        f"{[fmt_float(round(g, 10)) for g in gains]}",
    ))

    # prey monotonically decreasing for m = n
    monotone = []
    for q in CURVE_ORDERS:
        tr = solve(q, q)
        monotone.append(bool(np.all(np.diff(tr.x) <= 0)))
    out.append(Diagnostic(
        "fig4", "prey always decreases (m = n)",
        "PASS" if all(monotone) else "INCONCLUSIVE",
        f"x non-increasing for m = n = {labels}: {monotone}",
    ))
    out.append(Diagnostic("window", "oracle window", "INFO",
                          f"t in [0, {fmt_float(t_max)}], h = {fmt_float(cfg.h)}"))
    return out
