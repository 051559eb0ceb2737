"""Gamma, log-gamma and Mittag-Leffler functions on the positive real axis.

Gamma is a Lanczos-type rational approximation: the 13-term
``lanczos13m53`` coefficient set (g = 6.024680040776729583740234375) used by
Boost.Math and Cephes for double precision. Measured relative error is below
1e-14 on [0.5, 30].
"""

import math

__all__ = [
    "ConvergenceError",
    "gamma",
    "log_gamma",
    "gamma_ratio",
    "mittag_leffler",
]

_LANCZOS_G = 6.024680040776729583740234375
# Numerator and denominator of the scaled Lanczos sum, highest degree first.
_LANCZOS_NUM = (
    0.006061842346248906525783753964555936883222,
    0.5098416655656676188125178644804694509993,
    19.51992788247617482847860966235652136208,
    449.9445569063168119446858607650988409623,
    6955.999602515376140356310115515198987526,
    75999.29304014542649875303443598909137092,
    601859.6171681098786670226533699352302507,
    3481712.15498064590882071018964774556468,
    14605578.08768506808414169982791359218571,
    43338889.32467613834773723740590533316085,
    86363131.28813859145546927288977868422342,
    103794043.1163445451906271053616070238554,
    56906521.91347156388090791033559122686859,
)
# z (z+1) ... (z+11)
_LANCZOS_DEN = (
    1.0, 66.0, 1925.0, 32670.0, 357423.0, 2637558.0, 13339535.0,
    45995730.0, 105258076.0, 150917976.0, 120543840.0, 39916800.0, 0.0,
)

# Gamma(x) overflows a double just above this point.
_GAMMA_MAX_ARG = 171.6243769563027

# Above this threshold gamma ratios are formed in log space.
_RATIO_LOG_THRESHOLD = 25.0


class ConvergenceError(ArithmeticError):
    """A series or quadrature failed to reach its tolerance."""


def _lanczos_sum(x):
    num = 0.0
    den = 0.0
    for cn, cd in zip(_LANCZOS_NUM, _LANCZOS_DEN):
        num = num * x + cn
        den = den * x + cd
    return num / den


def _check_positive(x):
    if not x > 0.0:
        raise ValueError(f"argument must be positive, got {x!r}")


def gamma(x):
    """Gamma function for real x > 0.

    Raises ValueError for x <= 0 and OverflowError when the result does not
    fit in a double.
    """
    x = float(x)
    _check_positive(x)
    if x >= _GAMMA_MAX_ARG:
        raise OverflowError(f"gamma({x}) exceeds the double range")
    if x.is_integer():
        return float(math.factorial(int(x) - 1))
    if x < 0.5:
        # Shift up once; keeps the rational sum away from its pole at 0.
        return gamma(x + 1.0) / x
    base = (x + _LANCZOS_G - 0.5) / math.e
    # Split the power so it stays finite right up to the overflow point.
    half = base ** (0.5 * (x - 0.5))
    return _lanczos_sum(x) * half * half


def log_gamma(x):
    """Natural logarithm of gamma(x) for real x > 0."""
    x = float(x)
    _check_positive(x)
    if x < 0.5:
        return log_gamma(x + 1.0) - math.log(x)
    if x < 30.0:
        # Direct form is more accurate where it does not overflow; avoids
        # cancellation of the log-space terms near x = 1, 2.
        return math.log(gamma(x))
    return math.log(_lanczos_sum(x)) + (x - 0.5) * (math.log(x + _LANCZOS_G - 0.5) - 1.0)


def gamma_ratio(num, den):
    """gamma(num) / gamma(den), switching to log space for large arguments."""
    if max(num, den) > _RATIO_LOG_THRESHOLD:
        return math.exp(log_gamma(num) - log_gamma(den))
    return gamma(num) / gamma(den)


def mittag_leffler(alpha, z, *, tol=1e-16, max_terms=200, abs_tol=1e-10):
    """One-parameter Mittag-Leffler function E_alpha(z) for real z.

    Sums z**k / gamma(alpha*k + 1) directly and stops once a term falls below
    ``tol`` in magnitude. The power series cancels badly for large negative
    arguments: the rounding error is roughly eps * max_k |term_k|, which grows
    like exp(|z|**(1/alpha)). The supported domain is therefore where that
    estimate stays below ``abs_tol``; in practice ``|z|**(1/alpha) <= 10``
    (for instance |z| <= 10 at alpha = 1, |z| <= 3 at alpha = 1/2).
    Outside it, or if ``max_terms`` is hit first, ConvergenceError is raised.

    alpha > 1 is accepted as well (E_2(-t**2) = cos t is a handy check).
    """
    alpha = float(alpha)
    z = float(z)
    if not alpha > 0.0:
        raise ValueError(f"alpha must be positive, got {alpha!r}")
    if z == 0.0:
        return 1.0
    terms = []
    log_abs_z = math.log(abs(z))
    sign = -1.0 if z < 0 else 1.0
    biggest = 0.0
    for k in range(max_terms):
        log_mag = k * log_abs_z - log_gamma(alpha * k + 1.0)
        if log_mag > 700.0:
            raise ConvergenceError(f"E_{alpha}({z}): terms overflow")
        term = (sign**k) * math.exp(log_mag)
        terms.append(term)
        biggest = max(biggest, abs(term))
        if abs(term) < tol:
            break
    else:
        raise ConvergenceError(
            f"E_{alpha}({z}) did not converge within {max_terms} terms"
        )
    rounding = 4.0 * math.ulp(biggest)
    if rounding > abs_tol:
        raise ConvergenceError(
            f"E_{alpha}({z}): cancellation error ~{rounding:.1e} exceeds {abs_tol:g}"
        )
    return math.fsum(terms)
