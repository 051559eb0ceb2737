import numpy as np
import pytest
from hypothesis import strategies as st

from fracrm.series import FracSeries, SeriesContext

ORDERS = (1 / 3, 1 / 2, 2 / 3, 1.0)

# Acceptance summary lines, printed at the end of the run.
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)


@pytest.fixture
def report():
    def record(number, title, passed, measured):
        status = "PASS" if passed else "FAIL"
        ACCEPTANCE_LINES.append(f"criterion {number} [{status}] {title}: {measured}")
        print(ACCEPTANCE_LINES[-1])
    return record


def random_series(rng, ctx, max_terms=6, max_degree=4, max_coeff=10.0):
    terms = {}
    for _ in range(rng.integers(1, max_terms + 1)):
        i = int(rng.integers(0, max_degree + 1))
        j = int(rng.integers(0, max_degree - i + 1))
        terms[(i, j)] = rng.uniform(-max_coeff, max_coeff)
    return FracSeries(ctx, terms)


contexts = st.builds(SeriesContext, st.sampled_from(ORDERS), st.sampled_from(ORDERS))


@st.composite
def series_in(draw, ctx, max_terms=6, max_degree=4):
    indices = st.tuples(st.integers(0, max_degree), st.integers(0, max_degree)).filter(
        lambda ij: ij[0] + ij[1] <= max_degree
    )
    coeffs = st.floats(-10, 10, allow_nan=False, allow_infinity=False, allow_subnormal=False)
    terms = draw(st.dictionaries(indices, coeffs, max_size=max_terms))
    return FracSeries(ctx, terms)


def l1(s):
    return sum(abs(c) for _, c in s)


def assert_coeffwise_close(s1, s2, tol, scale=1.0):
    """|a - b| <= tol * scale for every multi-index in either support."""
    for k in set(s1.terms) | set(s2.terms):
        assert abs(s1[k] - s2[k]) <= tol * scale, (k, s1[k], s2[k])


def assert_coeffwise_rel(s1, s2, tol):
    assert set(s1.terms) == set(s2.terms)
    for k in s1.terms:
        a, b = s1[k], s2[k]
        assert abs(a - b) <= tol * max(abs(a), abs(b)), (k, a, b)


@pytest.fixture
def rng():
    return np.random.default_rng(20240531)
