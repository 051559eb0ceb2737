"""Homotopy perturbation solution of the fractional Rosenzweig-MacArthur model.

    D^m x = r x (1 - x/K) - alpha x y / (a + x),   x(0) = delta
    D^n y = beta x y / (a + x) - d y,              y(0) = gamma_0

The Holling term 1/(a + x) is replaced by its truncated geometric expansion
B(x) = sum_k (-1)^k x^k / a^(k+1). With x = sum p^k x_k and y = sum p^k y_k,
each level solves D^m x_{k+1} = [p^k] f(x, y), D^n y_{k+1} = [p^k] g(x, y),
and the approximate solution is the sum of the levels.
"""

import warnings
from dataclasses import dataclass, field, replace

import numpy as np

from . import series as fs
from . import special
from .series import Axis, FracSeries, SeriesContext

__all__ = [
    "ModelParams",
    "HpmSolution",
    "bracket_coeffs",
    "bracket",
    "homotopy_rhs",
    "hpm_solve",
    "closed_form_reference",
    "evaluate_solution",
    "MAX_ORDER",
]

MAX_ORDER = 10

# Warn once |x| / a passes this; the truncated bracket is then a poor
# stand-in for 1/(a + x).
BRACKET_WARN_RATIO = 0.5


class BracketValidityWarning(RuntimeWarning):
    pass


@dataclass(frozen=True)
class ModelParams:
    """Model coefficients, initial data and fractional orders.

    Defaults are the reference numerical experiment: r = 0.03, K = 10,
    a = 16, alpha = 0.7, beta = 0.6, d = 0.01, x(0) = 1.3, y(0) = 0.6.
    """

    r: float = 0.03
    K: float = 10.0
    a: float = 16.0
    alpha: float = 0.7
    beta: float = 0.6
    d: float = 0.01
    delta: float = 1.3
    gamma_0: float = 0.6
    m: float = 1.0
    n: float = 1.0
    bracket_order: int = 4
    term_cap: int = field(default=fs.DEFAULT_TERM_CAP, compare=False)

    def __post_init__(self):
        for name in ("r", "K", "a", "alpha", "beta", "d", "delta", "gamma_0"):
            v = getattr(self, name)
            if not v > 0:
                raise ValueError(f"{name} must be positive, got {v!r}")
        for name in ("m", "n"):
            v = getattr(self, name)
            if not 0 < v <= 1:
                raise ValueError(f"{name} must lie in (0, 1], got {v!r}")
        if int(self.bracket_order) != self.bracket_order or self.bracket_order < 1:
            raise ValueError("bracket_order must be an integer >= 1")

    @property
    def context(self):
        return SeriesContext(self.m, self.n, term_cap=self.term_cap)

    def with_orders(self, m, n):
        return replace(self, m=m, n=n)


@dataclass(frozen=True)
class HpmSolution:
    params: ModelParams
    order: int
    x_terms: tuple
    y_terms: tuple

    def __call__(self, t):
        return evaluate_solution(self, t)


def bracket_coeffs(a, order):
    """Coefficients of the truncated expansion of 1/(a + x) in powers of x."""
    if not a > 0:
        raise ValueError("a must be positive")
    if order < 1:
        raise ValueError("order must be >= 1")
    return [(-1) ** k / a ** (k + 1) for k in range(order)]


def bracket(x, a, order):
    """Truncated bracket B(x); works on scalars and numpy arrays."""
    total = 0.0
    for c in reversed(bracket_coeffs(a, order)):
        total = total * x + c
    return total


# Polynomials in the homotopy parameter p are lists of FracSeries indexed by
# the power of p, always truncated to a fixed top degree.


def _padd(u, v):
    return [fs.add(a, b) for a, b in zip(u, v)]


def _pscale(u, c):
    return [fs.scale(a, c) for a in u]


def _pmul(u, v):
    top = len(u)
    ctx = u[0].context
    out = []
    for k in range(top):
        acc = fs.zero(ctx)
        for i in range(k + 1):
            if u[i] and v[k - i]:
                acc = fs.add(acc, fs.mul(u[i], v[k - i]))
        out.append(acc)
    return out


def _model_rhs_in_p(xs, ys, params):
    ctx = xs[0].context
    top = len(xs)
    one = [fs.constant(ctx, 1.0)] + [fs.zero(ctx)] * (top - 1)
    # Horner evaluation of B on the p-polynomial x
    coeffs = bracket_coeffs(params.a, params.bracket_order)
    B = _pscale(one, coeffs[-1])
    for c in reversed(coeffs[:-1]):
        B = _padd(_pmul(B, xs), _pscale(one, c))
    xx = _pmul(xs, xs)
    xyB = _pmul(_pmul(xs, ys), B)
    fx = _padd(
        _padd(_pscale(xs, params.r), _pscale(xx, -params.r / params.K)),
        _pscale(xyB, -params.alpha),
    )
    fy = _padd(_pscale(xyB, params.beta), _pscale(ys, -params.d))
    return fx, fy


def homotopy_rhs(k, xs, ys, params):
    """Coefficient of p**k in the model right-hand sides.

    ``xs`` and ``ys`` must hold at least x_0..x_k and y_0..y_k.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    if len(xs) <= k or len(ys) <= k:
        raise ValueError(f"need x_0..x_{k} and y_0..y_{k}")
    xs = list(xs[: k + 1])
    ys = list(ys[: k + 1])
    for s in xs + ys:
        fs._require_same_context(s, xs[0])
    fx, fy = _model_rhs_in_p(xs, ys, params)
    return fx[k], fy[k]


def hpm_solve(params, order=3):
    """Build x_0..x_N and y_0..y_N level by level."""
    if order < 0 or order > MAX_ORDER:
        raise ValueError(f"order must lie in 0..{MAX_ORDER}, got {order}")
    if params.delta >= params.a:
        warnings.warn(
            f"x(0) = {params.delta} >= a = {params.a}: the bracket expansion diverges",
            BracketValidityWarning,
            stacklevel=2,
        )
    ctx = params.context
    xs = [fs.constant(ctx, params.delta)]
    ys = [fs.constant(ctx, params.gamma_0)]
    for k in range(order):
        fx, fy = homotopy_rhs(k, xs, ys, params)
        xs.append(fs.j_integral(fx, Axis.M))
        ys.append(fs.j_integral(fy, Axis.N))
    return HpmSolution(params, order, tuple(xs), tuple(ys))


def evaluate_solution(sol, t):
    """(x(t), y(t)) from the partial sums of the levels; t scalar or array."""
    x = sum(fs.evaluate(s, t) for s in sol.x_terms)
    y = sum(fs.evaluate(s, t) for s in sol.y_terms)
    a = sol.params.a
    worst = float(np.max(np.abs(x))) if np.size(x) else 0.0
    if worst >= BRACKET_WARN_RATIO * a:
        warnings.warn(
            f"|x| = {worst:.3g} is not small against a = {a}: the truncated "
            "bracket is inaccurate here",
            BracketValidityWarning,
            stacklevel=2,
        )
    return x, y


def closed_form_reference(params, k):
    """Reference closed forms of the levels x_k, y_k for k = 0..3.

    Transcribed term by term, including the order-3 terms that
    do not follow from collecting powers of p; used as a regression fixture
    only.
    """
    if not 0 <= k <= 3:
        raise ValueError("closed forms are available for k = 0..3 only")
    ctx = params.context
    r, K, a = params.r, params.K, params.a
    al, be, d = params.alpha, params.beta, params.d
    de, ga = params.delta, params.gamma_0
    m, n = params.m, params.n
    G = special.gamma

    if k == 0:
        return fs.constant(ctx, de), fs.constant(ctx, ga)

    # four-term bracket and its x-derivative at delta, in the reference form
    B = 1 / a - de / a**2 + de**2 / a**3 - de**3 / a**4
    dB = 2 * de / a**3 - 1 / a**2 - 3 * de**2 / a**4
    X1 = r * de - r * de**2 / K - al * de * ga * B
    Y1 = be * de * ga * B - d * ga
    A = r - 2 * r * de / K - al * de * ga * dB - al * ga * B
    C = be * de * ga * dB + be * ga * B

    x_terms = []
    y_terms = []
    if k == 1:
        x_terms.append(((1, 0), X1 / G(m + 1)))
        y_terms.append(((0, 1), Y1 / G(n + 1)))
    elif k == 2:
        x_terms += [
            ((2, 0), A * X1 / G(2 * m + 1)),
            ((1, 1), -al * de * B * Y1 / G(m + n + 1)),
        ]
        y_terms += [
            ((1, 1), C * X1 / G(m + n + 1)),
            ((0, 2), (be * de * B - d) * Y1 / G(2 * n + 1)),
        ]
    else:
        x_terms += [
            ((3, 0), A**2 * X1 / G(3 * m + 1)),
            (
                (3, 0),
                -(r / K + al * de * ga / a**3 - 3 * al * de**2 * ga / a**4)
                * X1**2
                * G(2 * m + 1)
                / (G(m + 1) ** 2 * G(3 * m + 1)),
            ),
            ((1, 1), -al * de * B * Y1 / G(m + n + 1)),
            ((2, 0), -al * ga * B * X1 / G(2 * m + 1)),
            ((2, 1), -al * de * B * A * Y1 / G(2 * m + n + 1)),
            (
                (2, 1),
                -al * B * X1 * Y1 * G(m + n + 1)
                / (G(m + 1) * G(n + 1) * G(2 * m + n + 1)),
            ),
            (
                (2, 1),
                -al * be * de * B * (ga * B + de * ga * dB) * X1 / G(2 * m + n + 1),
            ),
            ((1, 2), -al * de * B * (be * de * B - d) * Y1 / G(2 * n + m + 1)),
        ]
        y_terms += [
            ((2, 1), C * A * X1 / G(2 * m + n + 1)),
            ((1, 2), -al * de * B * C * Y1 / G(m + 2 * n + 1)),
            (
                (2, 1),
                (be * de * ga / a**3 - 3 * be * de**2 * ga / a**4)
                * X1**2
                * G(2 * m + 1)
                / (G(m + 1) ** 2 * G(2 * m + n + 1)),
            ),
            ((0, 2), be * de * B * Y1 / G(2 * n + 1)),
            ((1, 1), be * ga * B * X1 / G(m + n + 1)),
            (
                (1, 2),
                be * B * X1 * Y1 * G(m + n + 1)
                / (G(m + 1) * G(n + 1) * G(m + 2 * n + 1)),
            ),
            ((1, 2), (be * de * B - d) * C * X1 / G(m + 2 * n + 1)),
            ((0, 3), (be * de * B - d) ** 2 * Y1 / G(3 * n + 1)),
        ]
    return _collect(ctx, x_terms), _collect(ctx, y_terms)


def _collect(ctx, pairs):
    out = {}
    for idx, c in pairs:
        out[idx] = out.get(idx, 0.0) + c
    return FracSeries(ctx, out)
