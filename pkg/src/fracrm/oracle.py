"""Time-stepping reference solvers for the predator-prey system.

``rk4`` is the classical fourth-order Runge-Kutta method (integer orders
only). ``fabm_solve`` is the fractional Adams-Bashforth-Moulton
predictor-corrector (Diethelm, Ford and Freed) in PECE form: rectangle-rule
predictor, trapezoid-rule corrector, one corrector sweep per step, on a
uniform grid, with a separate weight sequence for each equation's order.
For smooth D^alpha u its error is O(h^(1+alpha)); solutions that behave like
t^alpha near 0 converge more slowly there.
"""

import enum
from dataclasses import dataclass

import numpy as np

from . import special
from .hpm import bracket

__all__ = [
    "RhsVariant",
    "SolverConfig",
    "Trajectory",
    "NonFiniteStateError",
    "model_rhs",
    "rk4",
    "fabm",
    "fabm_solve",
]


class NonFiniteStateError(FloatingPointError):
    """The state became NaN or infinite during integration."""


class RhsVariant(enum.Enum):
    TRUNCATED = "truncated"
    EXACT = "exact"


@dataclass(frozen=True)
class SolverConfig:
    t_max: float
    steps: int
    rhs_variant: RhsVariant = RhsVariant.TRUNCATED

    def __post_init__(self):
        if not self.t_max > 0:
            raise ValueError("t_max must be positive")
        if int(self.steps) != self.steps or self.steps < 1:
            raise ValueError("steps must be an integer >= 1")
        object.__setattr__(self, "rhs_variant", RhsVariant(self.rhs_variant))

    @property
    def h(self):
        return self.t_max / self.steps

    @property
    def times(self):
        return np.linspace(0.0, self.t_max, self.steps + 1)


@dataclass(frozen=True)
class Trajectory:
    times: np.ndarray
    states: np.ndarray  # shape (len(times), 2): columns x, y

    @property
    def x(self):
        return self.states[:, 0]

    @property
    def y(self):
        return self.states[:, 1]

    def at(self, t):
        """State at grid time t (nearest grid point, must be within 1e-9)."""
        k = int(np.argmin(np.abs(self.times - t)))
        if abs(self.times[k] - t) > 1e-9 * max(1.0, abs(t)):
            raise ValueError(f"t = {t} is not a grid point")
        return self.states[k]


def model_rhs(params, variant=RhsVariant.TRUNCATED):
    """Right-hand side F(state) -> d/dt state for the chosen Holling term."""
    variant = RhsVariant(variant)
    r, K, a = params.r, params.K, params.a
    alpha, beta, d = params.alpha, params.beta, params.d
    order = params.bracket_order

    if variant is RhsVariant.TRUNCATED:
        def holling(x):
            return bracket(x, a, order)
    else:
        def holling(x):
            return 1.0 / (a + x)

    def rhs(state):
        x, y = state[0], state[1]
        hxy = x * y * holling(x)
        return np.array([r * x * (1.0 - x / K) - alpha * hxy, beta * hxy - d * y])

    return rhs


def _check_finite(state, t):
    if not np.all(np.isfinite(state)):
        raise NonFiniteStateError(f"state became non-finite at t = {t:g}")


def rk4(params, cfg):
    if params.m != 1 or params.n != 1:
        raise ValueError(
            f"rk4 needs integer orders m = n = 1, got m = {params.m}, n = {params.n}"
        )
    f = model_rhs(params, cfg.rhs_variant)
    h = cfg.h
    times = cfg.times
    states = np.empty((cfg.steps + 1, 2))
    u = np.array([params.delta, params.gamma_0], dtype=float)
    states[0] = u
    for k in range(cfg.steps):
        k1 = f(u)
        k2 = f(u + 0.5 * h * k1)
        k3 = f(u + 0.5 * h * k2)
        k4 = f(u + h * k3)
        u = u + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        _check_finite(u, times[k + 1])
        states[k + 1] = u
    return Trajectory(times, states)


def _abm_weights(alpha, steps, h):
    """Predictor and corrector weight sequences for one equation of order alpha."""
    j = np.arange(steps + 2, dtype=float)
    pred = (j[1:] ** alpha - j[:-1] ** alpha) * (h**alpha / special.gamma(alpha + 1.0))
    # interior corrector weights, indexed by l = k - j
    ja = j ** (alpha + 1.0)
    corr = (ja[2:] + ja[:-2] - 2.0 * ja[1:-1]) * (h**alpha / special.gamma(alpha + 2.0))
    return pred, corr


def fabm(f, orders, u0, t_max, steps):
    """Fractional PECE scheme for D^{orders[c]} u_c = f(u)_c, u(0) = u0.

    ``f`` maps a state vector to the vector of right-hand sides. Returns
    (times, states).
    """
    orders = np.asarray(orders, dtype=float)
    u0 = np.asarray(u0, dtype=float)
    dim = len(u0)
    if orders.shape != (dim,):
        raise ValueError("one order per component is required")
    if np.any(orders <= 0) or np.any(orders > 1):
        raise ValueError("orders must lie in (0, 1]")
    h = t_max / steps
    times = np.linspace(0.0, t_max, steps + 1)
    weights = [_abm_weights(a, steps, h) for a in orders]
    scale_end = [h**a / special.gamma(a + 2.0) for a in orders]

    states = np.empty((steps + 1, dim))
    hist = np.empty((steps + 1, dim))  # f evaluated along the solution
    states[0] = u0
    hist[0] = f(u0)
    pred_state = np.empty(dim)
    corr_state = np.empty(dim)
    for k in range(steps):
        # k + 1 is the new grid point; history holds f_0..f_k
        for c in range(dim):
            pred, corr = weights[c]
            alpha = orders[c]
            pred_state[c] = u0[c] + np.dot(pred[k::-1], hist[: k + 1, c])
            a0 = (k**(alpha + 1.0) - (k - alpha) * (k + 1) ** alpha) * scale_end[c]
            acc = a0 * hist[0, c]
            if k >= 1:
                acc += np.dot(corr[k - 1::-1], hist[1 : k + 1, c])
            corr_state[c] = u0[c] + acc
        fp = f(pred_state)
        new = corr_state + np.array(scale_end) * fp
        _check_finite(new, times[k + 1])
        states[k + 1] = new
        hist[k + 1] = f(new)
    return times, states


def fabm_solve(params, cfg):
    """Fractional predictor-corrector solution of the model with orders (m, n)."""
    f = model_rhs(params, cfg.rhs_variant)
    times, states = fabm(
        f, (params.m, params.n), (params.delta, params.gamma_0), cfg.t_max, cfg.steps
    )
    return Trajectory(times, states)
