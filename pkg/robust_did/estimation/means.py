"""
Post-Period Estimand Module

Simple and doubly robust differences in means between treated and control observations.
"""

from collections.abc import Sequence

import numpy as np
from scipy.special import expit

from ..constants import (
    COVARIATES_REQUIRED_ERROR,
    DEGENERATE_GROUP_ERROR,
    DEGENERATE_POST_ERROR,
    PROPENSITY_DEGENERATE_ERROR,
    PROPENSITY_TRIM,
)
from ..enums import EstimandKind
from ..exceptions import DegenerateCellError, EstimationError, PropensityDegenerateError
from ..models import EstimandValue
from ..panel import PanelDataset
from .irls import add_intercept, fit_least_squares, fit_logistic_irls


def diff_in_means(outcome: np.ndarray, treat: np.ndarray) -> EstimandValue:
    """
    Difference between the treated and control outcome means.

    Args:
        outcome: Outcome values
        treat: Binary treatment indicator aligned with outcome

    Returns:
        EstimandValue of kind SIMPLE_DIM

    Raises:
        DegenerateCellError: If either group is empty
    """
    treated = treat == 1.0
    n_treated = int(treated.sum())
    if n_treated == 0 or n_treated == len(treat):
        raise DegenerateCellError(DEGENERATE_GROUP_ERROR)
    return EstimandValue(float(outcome[treated].mean() - outcome[~treated].mean()), EstimandKind.SIMPLE_DIM)


def dr_diff_in_means(outcome: np.ndarray, treat: np.ndarray, covariates: np.ndarray) -> EstimandValue:
    """
    Doubly robust (AIPW, ATT-type) difference in means.

    The propensity score is a logistic regression of treat on the covariates, trimmed
    into [1e-6, 1 - 1e-6]; the control outcome model is a linear regression fitted on
    control rows. With m0 the fitted control outcome, the estimand is

        sum(w1 * (Y - m0)) - sum(w0 * (Y - m0)),

    where w1 is proportional to D and w0 to (1 - D) e / (1 - e), each normalized to one.
    Covariate columns without variation are dropped; if none remain the result equals
    the simple difference in means.

    Args:
        outcome: Outcome values
        treat: Binary treatment indicator
        covariates: (n, k) covariate matrix with k >= 1

    Returns:
        EstimandValue of kind DOUBLY_ROBUST

    Raises:
        DegenerateCellError: If either group is empty
        IrlsDivergedError: If the propensity fit does not converge
        PropensityDegenerateError: If every fitted propensity is on the trim boundary
        SingularDesignError: If the control outcome design is rank deficient
    """
    covariates = np.asarray(covariates, dtype=np.float64).reshape(len(outcome), -1)
    if covariates.shape[1] == 0:
        raise EstimationError(COVARIATES_REQUIRED_ERROR)

    treated = treat == 1.0
    n_treated = int(treated.sum())
    if n_treated == 0 or n_treated == len(treat):
        raise DegenerateCellError(DEGENERATE_GROUP_ERROR)

    varying = np.ptp(covariates, axis=0) > 0
    if not varying.any():
        return EstimandValue(diff_in_means(outcome, treat).value, EstimandKind.DOUBLY_ROBUST)
    design = add_intercept(covariates[:, varying])

    beta = fit_logistic_irls(design, treated.astype(np.float64))
    raw = expit(design @ beta)
    propensity = np.clip(raw, PROPENSITY_TRIM, 1.0 - PROPENSITY_TRIM)
    on_boundary = (propensity <= PROPENSITY_TRIM) | (propensity >= 1.0 - PROPENSITY_TRIM)
    if on_boundary.all():
        raise PropensityDegenerateError(PROPENSITY_DEGENERATE_ERROR)

    gamma = fit_least_squares(design[~treated], outcome[~treated], model="control outcome regression")
    residual = outcome - design @ gamma

    w1 = treated.astype(np.float64)
    w1 /= w1.sum()
    w0 = np.where(treated, 0.0, propensity / (1.0 - propensity))
    w0 /= w0.sum()

    value = float(np.sum(w1 * residual) - np.sum(w0 * residual))
    return EstimandValue(value, EstimandKind.DOUBLY_ROBUST)


def estimate_difference(outcome: np.ndarray, treat: np.ndarray, covariates: np.ndarray | None = None) -> EstimandValue:
    """Doubly robust difference when covariate columns are given, simple difference otherwise."""
    if covariates is None or covariates.shape[1] == 0:
        return diff_in_means(outcome, treat)
    return dr_diff_in_means(outcome, treat, covariates)


def post_period_estimand(ds: PanelDataset, covariates: Sequence[str] | None = None, rows: np.ndarray | None = None) -> EstimandValue:
    """
    Post-period estimand: simple difference in means, or doubly robust when covariates are set.

    Args:
        ds: Dataset with treat and post roles
        covariates: Covariate columns; defaults to the covariate role
        rows: Post-period rows to use; defaults to every row with post = 1

    Returns:
        EstimandValue (stored as OLS or DR)

    Raises:
        DegenerateCellError: If the post-period sample lacks a group
    """
    rows = ds.post_rows() if rows is None else rows
    names = ds.roles.covariates if covariates is None else tuple(covariates)
    outcome = ds.outcome[rows]
    treat = ds.treat[rows]
    n_treated = int((treat == 1.0).sum())
    if n_treated == 0 or n_treated == len(rows):
        raise DegenerateCellError(DEGENERATE_POST_ERROR)
    x = np.column_stack([ds.columns[name][rows] for name in names]) if names else None
    return estimate_difference(outcome, treat, x)
