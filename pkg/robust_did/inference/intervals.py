"""
Confidence Interval Module

Bootstrap-based confidence intervals for RDID bounds, for the ATT, the union of
per-level DID intervals and percentile intervals for point estimates.
"""

import numpy as np
from scipy import optimize, stats

from ..constants import CRITICAL_VALUE_TOL
from ..enums import CiType
from ..models import ConfidenceInterval
from .bootstrap import check_draws


def normal_quantile(p: float) -> float:
    """Standard normal quantile."""
    return float(stats.norm.ppf(p))


def two_sided_critical_value(level: float) -> float:
    """z_{1 - alpha/2} for a confidence level in percent."""
    return normal_quantile(0.5 + level / 200.0)


def ci_bounds_ye(draws: np.ndarray, point: tuple[float, float], level: float) -> ConfidenceInterval:
    """
    Confidence interval for the bounds: [L - z sd(L*), U + z sd(U*)].

    Args:
        draws: (replicates, 2) array of bootstrap (L*, U*)
        point: Estimated (L, U)
        level: Confidence level in percent

    Returns:
        ConfidenceInterval of type BOUNDS_YE
    """
    draws = check_draws(draws, 2)
    lower_hat, upper_hat = point
    sd_lower, sd_upper = np.std(draws, axis=0, ddof=1)
    z = two_sided_critical_value(level)
    lower = min(lower_hat - z * sd_lower, lower_hat)
    upper = max(upper_hat + z * sd_upper, upper_hat)
    return ConfidenceInterval(CiType.BOUNDS_YE, level, float(lower), float(upper))


def im_critical_value(width: float, sd_max: float, level: float) -> float:
    """
    Imbens-Manski critical value c >= 0 solving Phi(c + width / sd_max) - Phi(-c) = level / 100.

    Solved by bisection on [0, z_{1 - alpha/2}].
    """
    target = level / 100.0
    ratio = width / sd_max

    def excess(c: float) -> float:
        return float(stats.norm.cdf(c + ratio) - stats.norm.cdf(-c) - target)

    hi = two_sided_critical_value(level)
    if excess(0.0) >= 0.0:
        return 0.0
    if excess(hi) <= 0.0:
        return hi
    return float(optimize.bisect(excess, 0.0, hi, xtol=CRITICAL_VALUE_TOL))


def ci_att_ye(draws: np.ndarray, point: tuple[float, float], level: float) -> ConfidenceInterval:
    """
    Confidence interval for the ATT (Imbens-Manski type).

    With sd_L, sd_U the bootstrap standard deviations of the bound estimates and
    width = U - L, the interval is [L - c sd_L, U + c sd_U] where c is the
    Imbens-Manski critical value. Zero noise on both bounds returns [L, U].

    Args:
        draws: (replicates, 2) array of bootstrap (L*, U*)
        point: Estimated (L, U)
        level: Confidence level in percent

    Returns:
        ConfidenceInterval of type ATT_YE
    """
    draws = check_draws(draws, 2)
    lower_hat, upper_hat = point
    sd_lower, sd_upper = np.std(draws, axis=0, ddof=1)
    sd_max = max(sd_lower, sd_upper)
    if sd_max == 0.0:
        return ConfidenceInterval(CiType.ATT_YE, level, float(lower_hat), float(upper_hat))
    c = im_critical_value(max(upper_hat - lower_hat, 0.0), sd_max, level)
    return ConfidenceInterval(CiType.ATT_YE, level, float(lower_hat - c * sd_lower), float(upper_hat + c * sd_upper))


def ci_union(draws: np.ndarray, points: np.ndarray, level: float) -> ConfidenceInterval:
    """
    Union of two-sided normal intervals for the DID at every information level.

    Args:
        draws: (replicates, levels) array of bootstrap estimand - sb(level)
        points: Estimated estimand - sb(level), one per level
        level: Confidence level in percent

    Returns:
        ConfidenceInterval of type UNION
    """
    draws = check_draws(draws, 2)
    points = np.asarray(points, dtype=np.float64)
    sd = np.std(draws, axis=0, ddof=1)
    z = two_sided_critical_value(level)
    return ConfidenceInterval(CiType.UNION, level, float(np.min(points - z * sd)), float(np.max(points + z * sd)))


def ci_percentile(draws: np.ndarray, level: float) -> ConfidenceInterval:
    """
    Percentile interval from the alpha/2 and 1 - alpha/2 empirical quantiles.

    Quantiles use linear interpolation between order statistics: for sorted draws
    x_0..x_{n-1}, the q-quantile is read at position q (n - 1).

    Args:
        draws: Bootstrap draws of a scalar
        level: Confidence level in percent

    Returns:
        ConfidenceInterval of type PERCENTILE
    """
    draws = check_draws(draws, 1)
    alpha = 1.0 - level / 100.0
    lower, upper = np.quantile(draws, [alpha / 2.0, 1.0 - alpha / 2.0], method="linear")
    return ConfidenceInterval(CiType.PERCENTILE, level, float(lower), float(upper))
