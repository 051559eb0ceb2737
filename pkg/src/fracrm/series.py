"""Finite fractional power series in t with exponents on the lattice i*m + j*n.

A :class:`FracSeries` maps integer multi-indices ``(i, j)`` to real
coefficients and stands for ``sum c_ij * t**(i*m + j*n)``. The orders
``(m, n)`` live in a :class:`SeriesContext` shared by every series that takes
part in an operation. Multi-indices are never merged, even when two of them
land on the same exponent (m == n); merging only happens implicitly when a
series is evaluated.

The Riemann-Liouville integral and the Caputo derivative act term-wise via

    J^nu t^lam = Gamma(lam + 1) / Gamma(lam + nu + 1) * t^(lam + nu)
    D^nu t^lam = Gamma(lam + 1) / Gamma(lam - nu + 1) * t^(lam - nu)

so they are exact up to the rounding of the gamma ratio.
"""

import enum
import math
from dataclasses import dataclass, field
from types import MappingProxyType

import numpy as np

from . import special

__all__ = [
    "Axis",
    "ContextMismatchError",
    "IllFormedExponentError",
    "TermCapError",
    "SeriesContext",
    "FracSeries",
    "constant",
    "add",
    "scale",
    "mul",
    "j_integral",
    "caputo_derivative",
    "evaluate",
    "rl_integral",
    "rl_quadrature",
    "dumps",
    "loads",
]

DEFAULT_TERM_CAP = 10_000


class ContextMismatchError(ValueError):
    """Two series with different (m, n) were combined."""


class IllFormedExponentError(ValueError):
    """A Caputo derivative would leave the exponent lattice."""


class TermCapError(OverflowError):
    """An operation would produce more terms than the context allows."""


class Axis(enum.Enum):
    M = "m"
    N = "n"


@dataclass(frozen=True)
class SeriesContext:
    """Fractional orders (m, n) shared by a family of series.

    ``term_cap`` bounds the number of stored terms; it does not take part in
    equality, so two contexts with the same orders always interoperate.
    """

    m: float
    n: float
    term_cap: int = field(default=DEFAULT_TERM_CAP, compare=False)

    def __post_init__(self):
        for name in ("m", "n"):
            v = getattr(self, name)
            if not 0.0 < v <= 1.0:
                raise ValueError(f"order {name} must lie in (0, 1], got {v!r}")
        if self.term_cap < 1:
            raise ValueError("term_cap must be positive")

    def exponent(self, index):
        i, j = index
        return i * self.m + j * self.n

    def order(self, axis):
        return self.m if Axis(axis) is Axis.M else self.n


class FracSeries:
    """Immutable finite sum of terms c * t**(i*m + j*n).

    Canonical form: no stored coefficient is exactly zero. Arithmetic
    operators are thin wrappers around the module-level functions.
    """

    __slots__ = ("_context", "_terms")

    def __init__(self, context, terms=None):
        clean = {}
        for (i, j), c in (terms or {}).items():
            i, j = int(i), int(j)
            if i < 0 or j < 0:
                raise ValueError(f"negative multi-index ({i}, {j})")
            c = float(c)
            if c != 0.0:
                clean[(i, j)] = c
        if len(clean) > context.term_cap:
            raise TermCapError(
                f"series has {len(clean)} terms, cap is {context.term_cap}"
            )
        self._context = context
        self._terms = dict(sorted(clean.items()))

    @property
    def context(self):
        return self._context

    @property
    def terms(self):
        """Read-only view of the (i, j) -> coefficient map, sorted by index."""
        return MappingProxyType(self._terms)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __iter__(self):
        return iter(self._terms.items())

    def __getitem__(self, index):
        return self._terms.get(tuple(index), 0.0)

    def __eq__(self, other):
        if not isinstance(other, FracSeries):
            return NotImplemented
        return self._context == other._context and self._terms == other._terms

    def __hash__(self):
        return hash((self._context, tuple(self._terms.items())))

    def __repr__(self):
        body = ", ".join(f"{k}: {v!r}" for k, v in self._terms.items())
        return f"FracSeries(m={self._context.m!r}, n={self._context.n!r}, {{{body}}})"

    def __add__(self, other):
        if isinstance(other, FracSeries):
            return add(self, other)
        return add(self, constant(self._context, other))

    __radd__ = __add__

    def __neg__(self):
        return scale(self, -1.0)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, FracSeries):
            return mul(self, other)
        return scale(self, other)

    __rmul__ = __mul__

    def __call__(self, t):
        return evaluate(self, t)

    def support(self):
        return tuple(self._terms)


def _require_same_context(s1, s2):
    if s1.context != s2.context:
        raise ContextMismatchError(
            f"context (m={s1.context.m}, n={s1.context.n}) differs from "
            f"(m={s2.context.m}, n={s2.context.n})"
        )


def zero(ctx):
    return FracSeries(ctx)


def constant(ctx, c):
    return FracSeries(ctx, {(0, 0): c})


def add(s1, s2):
    _require_same_context(s1, s2)
    out = dict(s1.terms)
    for k, c in s2:
        out[k] = out.get(k, 0.0) + c
    return FracSeries(s1.context, out)


def scale(s, c):
    c = float(c)
    return FracSeries(s.context, {k: v * c for k, v in s})


def mul(s1, s2):
    _require_same_context(s1, s2)
    ctx = s1.context
    out = {}
    for (i1, j1), c1 in s1:
        for (i2, j2), c2 in s2:
            k = (i1 + i2, j1 + j2)
            out[k] = out.get(k, 0.0) + c1 * c2
    return FracSeries(ctx, out)


def _bump(index, axis, step):
    i, j = index
    if axis is Axis.M:
        return (i + step, j)
    return (i, j + step)


def j_integral(s, axis):
    """Riemann-Liouville integral of order m (Axis.M) or n (Axis.N)."""
    axis = Axis(axis)
    ctx = s.context
    nu = ctx.order(axis)
    out = {}
    for k, c in s:
        lam = ctx.exponent(k)
        out[_bump(k, axis, 1)] = c * special.gamma_ratio(lam + 1.0, lam + nu + 1.0)
    return FracSeries(ctx, out)


def caputo_derivative(s, axis):
    """Caputo derivative of order m (Axis.M) or n (Axis.N).

    Constants are annihilated. A term whose index is zero on the chosen axis
    is only accepted when its exponent equals the order exactly (it then maps
    to a constant); anything else would leave the lattice.
    """
    axis = Axis(axis)
    ctx = s.context
    nu = ctx.order(axis)
    out = {}
    for k, c in s:
        if k == (0, 0):
            continue
        lam = ctx.exponent(k)
        on_axis = k[0] if axis is Axis.M else k[1]
        if on_axis >= 1:
            target = _bump(k, axis, -1)
        elif math.isclose(lam, nu, rel_tol=1e-14, abs_tol=0.0):
            target = (0, 0)
        else:
            raise IllFormedExponentError(
                f"D^{nu} of t^{lam} (index {k}) is not on the lattice"
            )
        coeff = c * special.gamma_ratio(lam + 1.0, lam - nu + 1.0)
        out[target] = out.get(target, 0.0) + coeff
    return FracSeries(ctx, out)


def evaluate(s, t):
    """Sum of c * t**(i*m + j*n); t may be a scalar or an array (t >= 0).

    The constant term contributes its coefficient at t = 0 (0**0 = 1).
    """
    ctx = s.context
    t_arr = np.asarray(t, dtype=float)
    if np.any(t_arr < 0):
        raise ValueError("series are only evaluated at t >= 0")
    total = np.zeros_like(t_arr)
    for k, c in s:
        lam = ctx.exponent(k)
        total = total + (c if lam == 0 else c * t_arr**lam)
    if total.ndim == 0:
        return float(total)
    return total


# --- direct quadrature of the fractional integral --------------------------

_GL_CACHE = {}


def _gauss_legendre(npts):
    if npts not in _GL_CACHE:
        _GL_CACHE[npts] = np.polynomial.legendre.leggauss(npts)
    return _GL_CACHE[npts]


def _graded_panels(length, ratio, levels):
    # Panel edges length*ratio**k, k = 0..levels, shrinking towards zero.
    edges = length * ratio ** np.arange(levels + 1)
    return edges[1:], edges[:-1]


def _panel_nodes(lo, hi, npts):
    x, w = _gauss_legendre(npts)
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    nodes = mid[:, None] + half[:, None] * x[None, :]
    weights = half[:, None] * w[None, :]
    return nodes.ravel(), weights.ravel()


def _rl_rule(f, nu, t, npts, ratio, levels):
    # Split at t/2. Left half: f may carry t**lam singularities at 0, so
    # panels are graded geometrically towards 0. Right half, written in
    # w = t - s: the kernel w**(nu-1) is singular at w = 0, panels graded the
    # same way; the innermost panel [0, eps] uses w = eps * u**(1/nu), which
    # turns the kernel into the constant eps**nu / nu.
    half = 0.5 * t
    lo, hi = _graded_panels(half, ratio, levels)
    s_nodes, s_w = _panel_nodes(lo, hi, npts)
    # innermost left panel [0, lo[-1]]
    s_in, w_in = _panel_nodes(np.array([0.0]), lo[-1:], npts)
    s_nodes = np.concatenate([s_nodes, s_in])
    s_w = np.concatenate([s_w, w_in])
    left = np.sum(s_w * (t - s_nodes) ** (nu - 1.0) * f(s_nodes))

    w_nodes, w_w = _panel_nodes(lo, hi, npts)
    right = np.sum(w_w * w_nodes ** (nu - 1.0) * f(t - w_nodes))
    eps = lo[-1]
    x, w = _gauss_legendre(npts)
    u = 0.5 * (x + 1.0)
    inner = eps**nu / nu * np.sum(0.5 * w * f(t - eps * u ** (1.0 / nu)))
    return (left + right + inner) / special.gamma(nu)


def rl_integral(f, nu, t, *, tol=1e-10, npts=8, ratio=0.5, levels=40, max_refine=4):
    """Riemann-Liouville integral (1/Gamma(nu)) int_0^t (t-s)**(nu-1) f(s) ds.

    ``f`` must accept a numpy array of points in [0, t]. The rule is composite
    Gauss-Legendre on panels graded geometrically towards both endpoints (see
    ``_rl_rule``). The error is estimated by doubling the nodes per panel;
    refinement stops once two successive estimates agree to ``tol`` and
    ConvergenceError is raised if that does not happen in ``max_refine``
    doublings.
    """
    if not nu > 0:
        raise ValueError("nu must be positive")
    if not t > 0:
        raise ValueError("t must be positive")
    prev = _rl_rule(f, nu, t, npts, ratio, levels)
    for _ in range(max_refine):
        npts *= 2
        cur = _rl_rule(f, nu, t, npts, ratio, levels)
        if abs(cur - prev) <= tol:
            return float(cur)
        prev = cur
    raise special.ConvergenceError(
        f"fractional quadrature did not settle to {tol:g} (last change {abs(cur - prev):.2e})"
    )


def rl_quadrature(s, nu, t, *, tol=1e-10):
    """J^nu applied to the series ``s`` at time t, by numerical quadrature.

    Independent of :func:`j_integral`; used to cross-check it.
    """
    return rl_integral(lambda x: evaluate(s, x), nu, t, tol=tol)


# --- text serialization ----------------------------------------------------


def dumps(s):
    """One "i j coefficient" line per term, lexicographic in (i, j)."""
    return "".join(f"{i} {j} {c:.16e}\n" for (i, j), c in s)


def loads(ctx, text):
    terms = {}
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        i, j, c = line.split()
        terms[(int(i), int(j))] = float(c)
    return FracSeries(ctx, terms)
