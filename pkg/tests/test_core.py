import numpy as np
import pytest

from robust_did import (
    BootstrapPlan,
    CiType,
    EstimandKind,
    LossType,
    PanelDataset,
    RdidStatistic,
    RdidType,
    RobustDID,
    RoleError,
    VariableRoles,
)


@pytest.fixture(scope="module")
def bounds_result(dip_panel):
    return RobustDID(dip_panel, plan=BootstrapPlan(replicates=80, seed=7, level=95.0, n_jobs=1)).estimate()


def test_bounds_run(bounds_result, dip_panel):
    assert bounds_result.rdidtype is RdidType.BOUNDS
    assert bounds_result.n_obs == dip_panel.n_obs
    assert bounds_result.profile.levels.tolist() == [-2.0, -1.0, 0.0]
    assert bounds_result.bounds.lower <= bounds_result.bounds.upper
    assert set(bounds_result.intervals) == {CiType.BOUNDS_YE, CiType.ATT_YE, CiType.UNION}
    assert bounds_result.draws.successful == 80


def test_intervals_contain_point_bounds(bounds_result):
    lower, upper = bounds_result.bounds.lower, bounds_result.bounds.upper
    for ci in bounds_result.intervals.values():
        assert ci.lower <= lower
        assert ci.upper >= upper
        assert ci.level == 95.0


def test_stored_results_bounds(bounds_result):
    results = bounds_result.stored_results()
    assert set(results) == {
        "N",
        "OLS",
        "SB_LB",
        "SB_UB",
        "RDID_LB",
        "RDID_UB",
        "CI1_LB",
        "CI1_UB",
        "CI2_LB",
        "CI2_UB",
        "CI3_LB",
        "CI3_UB",
    }
    assert results["RDID_LB"] == results["OLS"] - results["SB_UB"]
    assert results["RDID_UB"] == results["OLS"] - results["SB_LB"]


def test_higher_level_widens_intervals(dip_panel, bounds_result):
    narrow = RobustDID(dip_panel, plan=BootstrapPlan(replicates=80, seed=7, level=90.0, n_jobs=1)).estimate()
    for ci_type in CiType.BOUNDS_YE, CiType.ATT_YE, CiType.UNION:
        assert bounds_result.interval(ci_type).length > narrow.interval(ci_type).length


def test_same_seed_reproduces_results(dip_panel, bounds_result):
    again = RobustDID(dip_panel, plan=BootstrapPlan(replicates=80, seed=7, level=95.0, n_jobs=2)).estimate()
    assert again.stored_results() == bounds_result.stored_results()


def test_policy_run(dip_panel, small_plan):
    result = RobustDID(dip_panel, RdidType.POLICY, plan=small_plan).estimate()
    results = result.stored_results()
    for loss in ("L1", "L2", "Linf"):
        assert results[f"{loss}_CI_LB"] <= results[f"{loss}_CI_UB"]
        assert result.bounds.lower <= results[f"{loss}_PE"] <= result.bounds.upper
    assert list(result.po_estimates) == [LossType.L1, LossType.L2, LossType.LINF]
    assert result.intervals == {}


def test_linear_run(dip_panel, small_plan):
    estimator = RobustDID(dip_panel, RdidType.LINEAR, plan=small_plan)
    assert estimator.resolved_peval() == 1.0
    result = estimator.estimate()
    results = result.stored_results()
    assert set(results) == {"N", "OLS", "SB_hat", "proj_PE", "CI_LB", "CI_UB"}
    assert results["proj_PE"] == pytest.approx(results["OLS"] - results["SB_hat"], abs=1e-12)
    assert result.forecast.peval == 1.0


def test_linear_run_explicit_peval(dip_panel, small_plan):
    result = RobustDID(dip_panel, RdidType.LINEAR, peval=2.0, plan=small_plan).estimate()
    assert result.forecast.peval == 2.0


def test_statistic_layout(toy_panel):
    bounds = RdidStatistic(RdidType.BOUNDS, (-1.0, 0.0))(toy_panel)
    assert bounds.tolist() == [6.0, 2.0, 3.0]
    policy = RdidStatistic(RdidType.POLICY, (-1.0, 0.0))(toy_panel)
    assert policy.tolist() == [4.0, 3.5, 3.5]
    linear = RdidStatistic(RdidType.LINEAR, (-1.0, 0.0), 1.0)(toy_panel)
    assert linear.tolist() == [2.0]


def test_missing_info_role(toy_frame):
    ds = PanelDataset.from_frame(toy_frame, VariableRoles(outcome="y", treat="d", post="post"))
    with pytest.raises(RoleError):
        RobustDID(ds)


def test_doubly_robust_run(dip_panel, small_plan):
    frame = dip_panel.to_frame()
    frame["z"] = np.random.default_rng(0).normal(size=len(frame))
    roles = VariableRoles(outcome="y", treat="d", post="post", info="t", cluster="id", covariates=("z",))
    result = RobustDID(PanelDataset.from_frame(frame, roles), plan=small_plan).estimate()
    assert "DR" in result.stored_results()
    assert result.estimand.kind is EstimandKind.DOUBLY_ROBUST
