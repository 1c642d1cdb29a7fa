"""
Robust-DID Estimation Module

Post-period estimands, selection bias profiles, RDID bounds, PO-RDID estimates and linear forecasts.
"""

from .bounds import default_peval, po_rdid, rdid_bounds, sb_linear_forecast, weighted_median
from .irls import add_intercept, fit_least_squares, fit_logistic_irls, logistic_log_likelihood
from .means import diff_in_means, dr_diff_in_means, estimate_difference, post_period_estimand
from .profile import selection_bias_profile


__all__ = [
    # Estimands
    "diff_in_means",
    "dr_diff_in_means",
    "estimate_difference",
    "post_period_estimand",
    # Profile
    "selection_bias_profile",
    # Bounds and point estimates
    "rdid_bounds",
    "po_rdid",
    "weighted_median",
    "sb_linear_forecast",
    "default_peval",
    # Fitting
    "add_intercept",
    "fit_logistic_irls",
    "logistic_log_likelihood",
    "fit_least_squares",
]
