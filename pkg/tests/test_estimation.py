import numpy as np
import pandas as pd
import pytest

from robust_did import (
    DegenerateCellError,
    DgpKind,
    EstimandKind,
    EstimandValue,
    EstimationError,
    InsufficientLevelsError,
    LossType,
    PanelDataset,
    SelectionBiasProfile,
    VariableRoles,
    default_peval,
    diff_in_means,
    dr_diff_in_means,
    po_rdid,
    post_period_estimand,
    rdid_bounds,
    sb_linear_forecast,
    selection_bias_profile,
    weighted_median,
)
from robust_did.estimation import fit_least_squares, fit_logistic_irls, logistic_log_likelihood
from robust_did.exceptions import IrlsDivergedError, SingularDesignError
from robust_did.simulation import DgpSpec, generate, selection_gap

from .conftest import random_small_panel


C = selection_gap()


# ---------------------------------------------------------------------------
# Estimands
# ---------------------------------------------------------------------------


def test_diff_in_means():
    value = diff_in_means(np.array([1.0, 3.0, 0.0, 2.0]), np.array([1.0, 1.0, 0.0, 0.0]))
    assert value.value == 1.0
    assert value.kind is EstimandKind.SIMPLE_DIM


def test_diff_in_means_needs_both_groups():
    with pytest.raises(DegenerateCellError):
        diff_in_means(np.array([1.0, 2.0]), np.array([1.0, 1.0]))


def test_post_period_estimand(toy_panel):
    assert post_period_estimand(toy_panel).value == 6.0


def test_dr_equals_dim_with_balanced_binary_covariate():
    # Both groups have the same covariate distribution, so the propensity is constant
    # and the control regression residuals average the same way in both groups.
    x = np.array([0.0, 1.0, 0.0, 1.0, 0.0, 1.0, 0.0, 1.0])
    d = np.array([1.0, 1.0, 1.0, 1.0, 0.0, 0.0, 0.0, 0.0])
    y = np.array([3.0, 5.0, 4.0, 8.0, 1.0, 2.0, 0.0, 3.0])
    dr = dr_diff_in_means(y, d, x[:, None])
    assert dr.kind is EstimandKind.DOUBLY_ROBUST
    assert dr.value == pytest.approx(diff_in_means(y, d).value, abs=1e-10)


def test_dr_adjusts_for_confounding_covariate():
    rng = np.random.default_rng(3)
    n = 4000
    x = rng.normal(size=n)
    d = (rng.random(n) < 1.0 / (1.0 + np.exp(-x))).astype(float)
    y = 2.0 * x + rng.normal(scale=0.1, size=n)
    naive = diff_in_means(y, d).value
    adjusted = dr_diff_in_means(y, d, x[:, None]).value
    assert abs(naive) > 0.5
    assert adjusted == pytest.approx(0.0, abs=0.05)


def test_dr_drops_constant_covariates():
    y = np.array([3.0, 5.0, 1.0, 2.0])
    d = np.array([1.0, 1.0, 0.0, 0.0])
    value = dr_diff_in_means(y, d, np.ones((4, 1)))
    assert value.value == diff_in_means(y, d).value
    assert value.kind is EstimandKind.DOUBLY_ROBUST


def test_dr_on_covariate_slice():
    # Post-period rows with x = 1: Y = 1.5 U + theta D, so the gap is 1.5 c + theta
    ds = generate(DgpSpec(DgpKind.COVARIATE_EXAMPLE, n=200_000, theta=2.0, seed=21))
    rows = (ds.post == 1) & (ds.info == 1)
    noise = np.random.default_rng(5).normal(size=int(rows.sum()))
    covariates = np.column_stack([ds.info[rows], noise])
    value = dr_diff_in_means(ds.outcome[rows], ds.treat[rows], covariates)
    assert value.kind is EstimandKind.DOUBLY_ROBUST
    assert value.value == pytest.approx(1.5 * C + 2.0, abs=0.05)


def test_dr_requires_covariates():
    with pytest.raises(EstimationError):
        dr_diff_in_means(np.zeros(4), np.array([1.0, 0.0, 1.0, 0.0]), np.empty((4, 0)))


def test_non_finite_estimand_rejected():
    with pytest.raises(EstimationError):
        EstimandValue(float("nan"))


def test_logistic_irls_recovers_coefficients():
    rng = np.random.default_rng(0)
    n = 20000
    x = rng.normal(size=n)
    design = np.column_stack([np.ones(n), x])
    d = (rng.random(n) < 1.0 / (1.0 + np.exp(-(0.5 - 1.0 * x)))).astype(float)
    beta = fit_logistic_irls(design, d)
    assert beta == pytest.approx([0.5, -1.0], abs=0.08)


def test_logistic_log_likelihood_at_zero():
    design = np.column_stack([np.ones(6), np.arange(6.0)])
    target = np.array([0.0, 1.0, 0.0, 1.0, 1.0, 0.0])
    assert logistic_log_likelihood(design, target, np.zeros(2)) == pytest.approx(-6.0 * np.log(2.0), abs=1e-12)


def test_logistic_irls_solves_score_equations_near_separation():
    x = np.linspace(-3.0, 3.0, 40)
    target = (x > 0).astype(float)
    target[19], target[20] = 1.0, 0.0
    design = np.column_stack([np.ones(40), x])
    beta = fit_logistic_irls(design, target)
    score = design.T @ (target - 1.0 / (1.0 + np.exp(-(design @ beta))))
    assert np.abs(score).max() < 1e-6
    # The fitted coefficients maximize the likelihood
    for shift in ([0.01, 0.0], [0.0, 0.01], [0.0, -0.01]):
        assert logistic_log_likelihood(design, target, beta + np.array(shift)) < logistic_log_likelihood(design, target, beta)


def test_logistic_irls_separated_data_diverges():
    design = np.column_stack([np.ones(4), np.array([-2.0, -1.0, 1.0, 2.0])])
    with pytest.raises(IrlsDivergedError):
        fit_logistic_irls(design, np.array([0.0, 0.0, 1.0, 1.0]))


def test_least_squares_rank_deficient():
    design = np.column_stack([np.ones(5), np.arange(5.0), np.zeros(5)])
    with pytest.raises(SingularDesignError):
        fit_least_squares(design, np.arange(5.0))


def test_least_squares_exact_fit():
    design = np.column_stack([np.ones(4), np.arange(4.0)])
    coef = fit_least_squares(design, 1.0 + 2.0 * np.arange(4.0))
    assert coef == pytest.approx([1.0, 2.0], abs=1e-12)


# ---------------------------------------------------------------------------
# Profiles and bounds
# ---------------------------------------------------------------------------


def test_selection_bias_profile(toy_panel):
    profile = selection_bias_profile(toy_panel)
    assert profile.levels.tolist() == [-1.0, 0.0]
    assert profile.sb.tolist() == [2.0, 3.0]
    assert profile.weights.tolist() == [0.5, 0.5]


def test_profile_validation():
    with pytest.raises(EstimationError):
        SelectionBiasProfile.from_arrays([], [], [])
    with pytest.raises(EstimationError):
        SelectionBiasProfile.from_arrays([1.0, 0.0], [1.0, 2.0], [0.5, 0.5])
    with pytest.raises(EstimationError):
        SelectionBiasProfile.from_arrays([0.0, 1.0], [1.0, 2.0], [0.5, 0.6])


def test_rdid_bounds(toy_panel):
    bounds = rdid_bounds(post_period_estimand(toy_panel), selection_bias_profile(toy_panel))
    assert (bounds.lower, bounds.upper) == (3.0, 4.0)
    assert (bounds.sb_inf, bounds.sb_sup) == (2.0, 3.0)
    assert bounds.width == 1.0


def test_singleton_profile_collapses_to_did():
    profile = SelectionBiasProfile.from_arrays([0.0], [1.25], [1.0])
    estimand = EstimandValue(4.0)
    bounds = rdid_bounds(estimand, profile)
    assert bounds.lower == bounds.upper == 2.75
    for loss in LossType:
        assert po_rdid(estimand, profile, loss).value == 2.75


def test_location_equivariance(toy_frame, toy_roles):
    base = rdid_bounds(*_estimand_and_profile(PanelDataset.from_frame(toy_frame, toy_roles)))
    shifted_frame = toy_frame.copy()
    treated_post = (shifted_frame["d"] == 1.0) & (shifted_frame["post"] == 1.0)
    shifted_frame.loc[treated_post, "y"] += 2.5
    shifted = rdid_bounds(*_estimand_and_profile(PanelDataset.from_frame(shifted_frame, toy_roles)))
    assert shifted.lower == pytest.approx(base.lower + 2.5, abs=1e-12)
    assert shifted.upper == pytest.approx(base.upper + 2.5, abs=1e-12)


def _estimand_and_profile(ds):
    return post_period_estimand(ds), selection_bias_profile(ds)


def test_weighted_median():
    values = np.array([5.0, 1.0, 3.0])
    assert weighted_median(values, np.array([0.2, 0.2, 0.6])) == 3.0
    assert weighted_median(values, np.array([0.6, 0.2, 0.2])) == 5.0
    # Cumulative weight exactly one half selects the lower value
    assert weighted_median(np.array([1.0, 2.0]), np.array([0.5, 0.5])) == 1.0
    # Thirds accumulate with rounding error around one half
    assert weighted_median(np.array([7.0, 3.0, 1.0]), np.full(3, 1.0 / 3.0)) == 3.0


def test_po_rdid_losses(toy_panel):
    estimand, profile = _estimand_and_profile(toy_panel)
    assert po_rdid(estimand, profile, LossType.L1).value == 4.0
    assert po_rdid(estimand, profile, LossType.L2).value == 3.5
    assert po_rdid(estimand, profile, LossType.LINF).value == 3.5


def test_po_rdid_inside_bounds():
    profile = SelectionBiasProfile.from_arrays([-2.0, -1.0, 0.0], [7.0 * C, 3.0 * C, C], [0.2, 0.5, 0.3])
    estimand = EstimandValue(3.0 * C)
    bounds = rdid_bounds(estimand, profile)
    for loss in LossType:
        assert bounds.lower <= po_rdid(estimand, profile, loss).value <= bounds.upper


def test_po_rdid_analytic_profile():
    theta = -1.0
    profile = SelectionBiasProfile.from_arrays([-2.0, -1.0, 0.0], [7.0 * C, 3.0 * C, C], [1.0 / 3.0] * 3)
    estimand = EstimandValue(3.0 * C + theta)
    assert po_rdid(estimand, profile, LossType.L1).value == pytest.approx(theta, abs=1e-12)
    assert po_rdid(estimand, profile, LossType.L2).value == pytest.approx(theta - 2.0 * C / 3.0, abs=1e-12)
    assert po_rdid(estimand, profile, LossType.LINF).value == pytest.approx(theta - C, abs=1e-12)


def test_linear_forecast_analytic_profile():
    profile = SelectionBiasProfile.from_arrays([-2.0, -1.0, 0.0], [7.0 * C, 3.0 * C, C], [1.0 / 3.0] * 3)
    forecast = sb_linear_forecast(profile, EstimandValue(0.0), 1.0)
    assert forecast.slope == pytest.approx(-3.0 * C, abs=1e-12)
    assert forecast.sb_hat == pytest.approx(-7.0 * C / 3.0, abs=1e-12)
    assert forecast.value == pytest.approx(7.0 * C / 3.0, abs=1e-12)


def test_linear_forecast_exact_line():
    profile = SelectionBiasProfile.from_arrays([1.0, 2.0, 3.0], [2.0, 4.0, 6.0], [0.2, 0.3, 0.5])
    forecast = sb_linear_forecast(profile, EstimandValue(10.0), 4.0)
    assert forecast.sb_hat == pytest.approx(8.0, abs=1e-12)
    assert forecast.value == pytest.approx(2.0, abs=1e-12)


def test_linear_forecast_needs_two_levels():
    profile = SelectionBiasProfile.from_arrays([0.0], [1.0], [1.0])
    with pytest.raises(InsufficientLevelsError):
        sb_linear_forecast(profile, EstimandValue(0.0), 1.0)


def test_default_peval(toy_panel):
    assert default_peval(toy_panel) == 1.0


# ---------------------------------------------------------------------------
# Brute-force oracle on random small panels
# ---------------------------------------------------------------------------


def _group_mean(frame: pd.DataFrame, treated: float) -> float:
    values = [y for y, d in zip(frame["y"], frame["d"], strict=True) if d == treated]
    return sum(values) / len(values)


def _brute_force(frame: pd.DataFrame) -> dict[str, float]:
    post = frame[frame["post"] == 1.0]
    pre = frame[frame["post"] == 0.0]
    theta = _group_mean(post, 1.0) - _group_mean(post, 0.0)

    levels = sorted(set(pre["t"]))
    sbs, counts = [], []
    for level in levels:
        cell = pre[pre["t"] == level]
        sbs.append(_group_mean(cell, 1.0) - _group_mean(cell, 0.0))
        counts.append(len(cell))
    total = sum(counts)
    weights = [count / total for count in counts]

    ordered = sorted(zip(sbs, weights, strict=True))
    cumulative, median = 0.0, ordered[-1][0]
    for sb, weight in ordered:
        cumulative += weight
        if cumulative >= 0.5 - 1e-12:
            median = sb
            break

    result = {
        "lower": theta - max(sbs),
        "upper": theta - min(sbs),
        "L1": theta - median,
        "L2": theta - sum(w * s for w, s in zip(weights, sbs, strict=True)),
        "Linf": theta - (max(sbs) + min(sbs)) / 2.0,
    }
    if len(levels) >= 2:
        mean_x = sum(levels) / len(levels)
        mean_y = sum(sbs) / len(sbs)
        sxy = sum((x - mean_x) * (y - mean_y) for x, y in zip(levels, sbs, strict=True))
        sxx = sum((x - mean_x) ** 2 for x in levels)
        slope = sxy / sxx
        intercept = mean_y - slope * mean_x
        result["forecast"] = theta - (intercept + slope * 1.0)
    return result


def test_oracle_equivalence_on_random_panels():
    rng = np.random.default_rng(20240601)
    for _ in range(60):
        frame, roles = random_small_panel(rng)
        assert len(frame) <= 20
        ds = PanelDataset.from_frame(frame, roles)
        expected = _brute_force(frame)

        estimand, profile = _estimand_and_profile(ds)
        bounds = rdid_bounds(estimand, profile)
        assert bounds.lower == pytest.approx(expected["lower"], abs=1e-12)
        assert bounds.upper == pytest.approx(expected["upper"], abs=1e-12)
        for loss in LossType:
            assert po_rdid(estimand, profile, loss).value == pytest.approx(expected[loss.label], abs=1e-12)
        if "forecast" in expected:
            forecast = sb_linear_forecast(profile, estimand, default_peval(ds))
            assert forecast.value == pytest.approx(expected["forecast"], abs=1e-10)


# ---------------------------------------------------------------------------
# Large-sample checks against the analytic dip design
# ---------------------------------------------------------------------------


def test_analytic_bounds_large_sample(dip_large):
    theta = -1.0
    estimand, profile = _estimand_and_profile(dip_large)
    bounds = rdid_bounds(estimand, profile)
    assert bounds.lower == pytest.approx(theta - 4.0 * C, abs=0.15)
    assert bounds.upper == pytest.approx(theta + 2.0 * C, abs=0.15)
    did = estimand.value - profile.sb[-1]
    assert did == pytest.approx(theta + 2.0 * C, abs=0.15)


def test_po_identities_large_sample(dip_large):
    theta = -1.0
    estimand, profile = _estimand_and_profile(dip_large)
    assert po_rdid(estimand, profile, LossType.L1).value == pytest.approx(theta, abs=0.1)
    assert po_rdid(estimand, profile, LossType.L2).value == pytest.approx(theta - 2.0 * C / 3.0, abs=0.1)
    assert po_rdid(estimand, profile, LossType.LINF).value == pytest.approx(theta - C, abs=0.1)


def test_linear_forecast_large_sample(dip_large):
    estimand, profile = _estimand_and_profile(dip_large)
    forecast = sb_linear_forecast(profile, estimand, 1.0)
    assert forecast.sb_hat == pytest.approx(-7.0 * C / 3.0, abs=0.1)


def test_profile_accepts_covariate_roles(toy_frame):
    # Post-period rows: treated x = 0, 1 and control x = 0, 1
    toy_frame["x"] = [0.0, 1.0, 0.0, 1.0, 0.0, 1.0, 0.0, 1.0, 0.0, 1.0, 0.0, 1.0]
    roles = VariableRoles(outcome="y", treat="d", post="post", info="t", covariates=("x",))
    ds = PanelDataset.from_frame(toy_frame, roles)
    estimand = post_period_estimand(ds)
    assert estimand.kind is EstimandKind.DOUBLY_ROBUST
    assert estimand.value == pytest.approx(6.0, abs=1e-10)
