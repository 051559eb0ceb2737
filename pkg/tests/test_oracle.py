import numpy as np
import pytest

from fracrm import special
from fracrm.hpm import ModelParams
from fracrm.oracle import (
    NonFiniteStateError,
    RhsVariant,
    SolverConfig,
    fabm,
    fabm_solve,
    model_rhs,
    rk4,
)

PARAMS = ModelParams()


def test_solver_config_validation():
    with pytest.raises(ValueError):
        SolverConfig(0.0, 10)
    with pytest.raises(ValueError):
        SolverConfig(1.0, 0)
    cfg = SolverConfig(2.0, 4, "exact")
    assert cfg.rhs_variant is RhsVariant.EXACT
    assert cfg.h == 0.5
    np.testing.assert_array_equal(cfg.times, [0, 0.5, 1, 1.5, 2])


def test_rhs_variants_agree_to_bracket_error():
    x = np.array([1.3, 0.6])
    trunc = model_rhs(PARAMS, "truncated")(x)
    exact = model_rhs(PARAMS, "exact")(x)
    # the four-term geometric tail is (x/a)^4 / (a + x)
    assert np.max(np.abs(trunc - exact)) < 1e-5
    assert not np.array_equal(trunc, exact)


def test_rk4_initial_state():
    tr = rk4(PARAMS, SolverConfig(1.0, 10))
    assert tuple(tr.states[0]) == (1.3, 0.6)
    assert tr.states.shape == (11, 2)


def test_rk4_rejects_fractional_orders():
    with pytest.raises(ValueError):
        rk4(PARAMS.with_orders(0.5, 1.0), SolverConfig(1.0, 10))


def test_rk4_step_halving():
    ref = rk4(PARAMS, SolverConfig(1.0, 256)).states[-1]
    errs = [np.max(np.abs(rk4(PARAMS, SolverConfig(1.0, s)).states[-1] - ref)) for s in (1, 2, 4, 8)]
    for a, b in zip(errs, errs[1:]):
        assert 8 <= a / b <= 32


def test_truncated_and_exact_trajectories_differ_slightly():
    cfg = SolverConfig(5.0, 500)
    a = rk4(PARAMS, cfg)
    b = rk4(PARAMS, SolverConfig(5.0, 500, RhsVariant.EXACT))
    gap = np.max(np.abs(a.states - b.states))
    assert 0 < gap < 1e-4


def test_trajectory_at_requires_grid_point():
    tr = rk4(PARAMS, SolverConfig(1.0, 10))
    np.testing.assert_array_equal(tr.at(0.5), tr.states[5])
    with pytest.raises(ValueError):
        tr.at(0.55)


def test_fabm_integer_order_matches_rk4():
    cfg = SolverConfig(1.0, 1000, RhsVariant.EXACT)
    diff = np.max(np.abs(fabm_solve(PARAMS, cfg).states - rk4(PARAMS, cfg).states))
    assert diff <= 1e-4


def test_fabm_exponential():
    times, states = fabm(lambda u: -u, [1.0], [1.0], 1.0, 1000)
    assert np.max(np.abs(states[:, 0] - np.exp(-times))) < 1e-6


def test_fabm_converges_on_mittag_leffler():
    errs = []
    for steps in (250, 500, 1000):
        times, states = fabm(lambda u: -u, [0.5], [1.0], 1.0, steps)
        exact = np.array([special.mittag_leffler(0.5, -np.sqrt(t)) for t in times])
        errs.append(np.max(np.abs(states[:, 0] - exact)))
    assert errs[0] / errs[1] > 1.5 and errs[1] / errs[2] > 1.5


def test_fabm_separate_orders():
    # D^a u = c has the exact solution u0 + c t^a / Gamma(a + 1), reproduced
    # by the product rules for each component independently
    times, states = fabm(lambda u: np.array([1.0, -2.0]), [0.5, 0.8], [1.0, 3.0], 1.0, 100)
    np.testing.assert_allclose(states[:, 0], 1 + times**0.5 / special.gamma(1.5), atol=1e-12)
    np.testing.assert_allclose(states[:, 1], 3 - 2 * times**0.8 / special.gamma(1.8), atol=1e-12)


def test_fabm_argument_checks():
    with pytest.raises(ValueError):
        fabm(lambda u: u, [0.5, 0.5], [1.0], 1.0, 10)
    with pytest.raises(ValueError):
        fabm(lambda u: u, [1.5], [1.0], 1.0, 10)


@np.errstate(over="ignore", invalid="ignore")
def test_non_finite_state_raises():
    with pytest.raises(NonFiniteStateError):
        fabm(lambda u: u**2, [1.0], [1.0], 5.0, 50)
    blowup = ModelParams(r=50.0, K=1e-3)
    with pytest.raises(NonFiniteStateError):
        rk4(blowup, SolverConfig(50.0, 10))
