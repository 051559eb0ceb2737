import math

import numpy as np
import pytest

from fracrm import special
from fracrm.special import ConvergenceError, gamma, log_gamma, mittag_leffler


@pytest.mark.parametrize(
    "x, expected",
    [(1.0, 1.0), (5.0, 24.0), (0.5, 1.7724538509055160)],
)
def test_gamma_examples(x, expected):
    assert gamma(x) == pytest.approx(expected, rel=1e-12)


@pytest.mark.parametrize(
    "x, expected",
    [(1.0, 0.0), (2.0, 0.0), (10.0, 12.801827480081469)],
)
def test_log_gamma_examples(x, expected):
    assert log_gamma(x) == pytest.approx(expected, rel=1e-12, abs=1e-15)


def test_gamma_matches_stdlib_on_validated_range():
    xs = np.linspace(0.5, 30.0, 3001)
    rel = [abs(gamma(x) / math.gamma(x) - 1.0) for x in xs]
    assert max(rel) <= 1e-12


def test_gamma_recurrence():
    for x in np.linspace(0.5, 20.0, 2001):
        assert gamma(x + 1) == pytest.approx(x * gamma(x), rel=1e-12)


def test_log_gamma_consistent_with_gamma():
    for x in np.linspace(0.5, 30.0, 1001):
        assert math.exp(log_gamma(x)) == pytest.approx(gamma(x), rel=1e-12)


def test_log_gamma_large_arguments():
    for x in (50.0, 171.0, 500.0, 1e4):
        assert log_gamma(x) == pytest.approx(math.lgamma(x), rel=1e-13)


def test_gamma_small_positive_arguments():
    for x in (1e-3, 0.1, 0.25, 0.49):
        assert gamma(x) == pytest.approx(math.gamma(x), rel=1e-13)


@pytest.mark.parametrize("bad", [0.0, -1.0, -0.5])
def test_domain_errors(bad):
    with pytest.raises(ValueError):
        gamma(bad)
    with pytest.raises(ValueError):
        log_gamma(bad)


def test_gamma_overflow():
    assert math.isfinite(gamma(171.0))
    with pytest.raises(OverflowError):
        gamma(172.0)


def test_gamma_ratio_switches_to_log_space():
    assert special.gamma_ratio(3.5, 2.5) == pytest.approx(2.5, rel=1e-14)
    assert special.gamma_ratio(200.5, 199.5) == pytest.approx(199.5, rel=1e-12)


@pytest.mark.parametrize(
    "alpha, z, expected",
    [(1.0, 1.0, 2.718281828459045), (0.5, 0.0, 1.0), (2.0, -1.0, 0.5403023058681398)],
)
def test_mittag_leffler_examples(alpha, z, expected):
    assert mittag_leffler(alpha, z) == pytest.approx(expected, abs=1e-10)


def test_mittag_leffler_specializations():
    for z in np.linspace(-3, 3, 121):
        assert abs(mittag_leffler(1.0, z) - math.exp(z)) <= 1e-10
    for t in np.linspace(0, 3, 61):
        assert abs(mittag_leffler(2.0, -t * t) - math.cos(t)) <= 1e-10


def test_mittag_leffler_half_order_closed_form():
    # E_{1/2}(z) = exp(z^2) erfc(-z)
    for z in np.linspace(-3, 2, 51):
        expected = math.exp(z * z) * math.erfc(-z)
        assert mittag_leffler(0.5, z) == pytest.approx(expected, abs=1e-10)


def test_mittag_leffler_refuses_cancellation_dominated_arguments():
    with pytest.raises(ConvergenceError):
        mittag_leffler(0.5, -8.0)


def test_mittag_leffler_term_cap():
    with pytest.raises(ConvergenceError):
        mittag_leffler(1.0, 2.0, max_terms=5)
