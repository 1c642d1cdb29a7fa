"""
RDID Bounds Module

Sharp bounds, policy-oriented point estimates and linear selection bias forecasts built from a profile.
"""

import numpy as np

from ..constants import INSUFFICIENT_LEVELS_ERROR, MEDIAN_THRESHOLD_SLACK
from ..enums import LossType
from ..exceptions import InsufficientLevelsError
from ..models import EstimandValue, LinearForecast, PoRdidEstimate, RdidBounds, SelectionBiasProfile
from ..panel import PanelDataset


def rdid_bounds(estimand: EstimandValue, profile: SelectionBiasProfile) -> RdidBounds:
    """
    Bounds [estimand - max sb, estimand - min sb].

    A singleton profile collapses the bounds to the standard DID point.
    """
    sb_inf = profile.sb_min
    sb_sup = profile.sb_max
    return RdidBounds(
        lower=estimand.value - sb_sup,
        upper=estimand.value - sb_inf,
        estimand=estimand,
        sb_inf=sb_inf,
        sb_sup=sb_sup,
    )


def weighted_median(values: np.ndarray, weights: np.ndarray) -> float:
    """
    Smallest value whose cumulative weight, after sorting by value, reaches one half.

    No interpolation takes place, so the result is always one of the values.

    Args:
        values: Values
        weights: Non-negative weights summing to one

    Returns:
        Weighted median
    """
    order = np.argsort(values, kind="stable")
    cumulative = np.cumsum(weights[order])
    index = int(np.searchsorted(cumulative, 0.5 - MEDIAN_THRESHOLD_SLACK, side="left"))
    return float(values[order][min(index, len(values) - 1)])


def po_rdid(estimand: EstimandValue, profile: SelectionBiasProfile, loss: LossType) -> PoRdidEstimate:
    """
    Policy-oriented RDID estimate under the given loss.

    The loss-minimizing selection bias is the weighted median (L1), the weighted
    mean (L2) or the midpoint of the selection bias range (Linf).

    Args:
        estimand: Post-period estimand
        profile: Selection bias profile
        loss: Loss function

    Returns:
        PoRdidEstimate with value = estimand - sb_opt
    """
    sb = profile.sb
    weights = profile.weights
    if loss is LossType.L1:
        sb_opt = weighted_median(sb, weights)
    elif loss is LossType.L2:
        sb_opt = float(np.dot(weights, sb))
    else:
        sb_opt = (profile.sb_min + profile.sb_max) / 2.0
    # Rounding in the weighted mean must not leave the hull
    sb_opt = min(max(sb_opt, profile.sb_min), profile.sb_max)
    return PoRdidEstimate(loss=loss, sb_opt=sb_opt, value=estimand.value - sb_opt)


def sb_linear_forecast(profile: SelectionBiasProfile, estimand: EstimandValue, peval: float) -> LinearForecast:
    """
    Predict the post-period selection bias with an unweighted OLS line through the profile.

    Args:
        profile: Selection bias profile, one design point per level
        estimand: Post-period estimand
        peval: Evaluation point of the prediction

    Returns:
        LinearForecast with sb_hat = intercept + slope * peval and value = estimand - sb_hat

    Raises:
        InsufficientLevelsError: If the profile has fewer than two levels
    """
    x = profile.levels
    y = profile.sb
    if len(np.unique(x)) < 2:
        raise InsufficientLevelsError(INSUFFICIENT_LEVELS_ERROR.format(count=len(np.unique(x))))

    x_centered = x - x.mean()
    slope = float(np.dot(x_centered, y - y.mean()) / np.dot(x_centered, x_centered))
    intercept = float(y.mean() - slope * x.mean())
    sb_hat = intercept + slope * peval
    return LinearForecast(
        intercept=intercept,
        slope=slope,
        peval=float(peval),
        sb_hat=sb_hat,
        value=estimand.value - sb_hat,
    )


def default_peval(ds: PanelDataset) -> float:
    """Mean of the info variable among post-period rows."""
    return float(ds.info[ds.post_rows()].mean())
