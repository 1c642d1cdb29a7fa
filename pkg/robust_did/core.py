"""
Robust-DID Core Business Logic

RobustDID class running the rdid pipeline: selection bias profile, post-period estimand,
bounds or point estimates for the chosen estimator type, and bootstrap confidence intervals.
"""

import logging
from dataclasses import dataclass, field

import numpy as np

from .config import BootstrapPlan
from .constants import (
    KEY_CI_LB,
    KEY_CI_LB_TEMPLATE,
    KEY_CI_UB,
    KEY_CI_UB_TEMPLATE,
    KEY_N,
    KEY_PO_CI_LB_TEMPLATE,
    KEY_PO_CI_UB_TEMPLATE,
    KEY_PO_PE_TEMPLATE,
    KEY_PROJ_PE,
    KEY_RDID_LB,
    KEY_RDID_UB,
    KEY_SB_HAT,
    KEY_SB_LB,
    KEY_SB_UB,
)
from .enums import CiType, Command, LossType, RdidType
from .estimation import (
    default_peval,
    po_rdid,
    post_period_estimand,
    rdid_bounds,
    sb_linear_forecast,
    selection_bias_profile,
)
from .inference import BootstrapDraws, ci_att_ye, ci_bounds_ye, ci_percentile, ci_union, cluster_bootstrap
from .models import (
    ConfidenceInterval,
    EstimandValue,
    LinearForecast,
    PoRdidEstimate,
    RdidBounds,
    SelectionBiasProfile,
)
from .panel import PanelDataset


logger = logging.getLogger(__name__)

# Loss display order of the PO-RDID table
LOSS_ORDER = (LossType.L1, LossType.L2, LossType.LINF)


@dataclass(frozen=True)
class RdidStatistic:
    """
    Statistic re-evaluated on every bootstrap replicate.

    Returns [estimand, sb_1, ..., sb_J] for BOUNDS, the three PO-RDID values
    (L1, L2, Linf) for POLICY and the forecast value for LINEAR. Profile levels
    are pinned to the original ones, so a replicate that loses a level fails.
    """

    rdidtype: RdidType
    levels: tuple[float, ...]
    peval: float | None = None

    def __call__(self, ds: PanelDataset) -> np.ndarray:
        estimand = post_period_estimand(ds)
        profile = selection_bias_profile(ds, levels=self.levels)
        if self.rdidtype is RdidType.BOUNDS:
            return np.concatenate([[estimand.value], profile.sb])
        if self.rdidtype is RdidType.POLICY:
            return np.array([po_rdid(estimand, profile, loss).value for loss in LOSS_ORDER])
        return np.array([sb_linear_forecast(profile, estimand, self.peval).value])


@dataclass(frozen=True)
class RdidResult:
    """
    Output of one rdid run.

    Attributes:
        rdidtype (RdidType): Estimator type
        n_obs (int): Observations used
        profile (SelectionBiasProfile): Pre-period selection bias profile
        estimand (EstimandValue): Post-period estimand
        bounds (RdidBounds): RDID bounds (computed for every type)
        level (float): Confidence level in percent
        intervals (dict[CiType, ConfidenceInterval]): CI1..CI3 (BOUNDS only)
        po_estimates (dict[LossType, PoRdidEstimate]): PO-RDID estimates (POLICY only)
        po_intervals (dict[LossType, ConfidenceInterval]): Percentile CIs (POLICY only)
        forecast (LinearForecast | None): Linear forecast (LINEAR only)
        forecast_interval (ConfidenceInterval | None): Percentile CI (LINEAR only)
        draws (BootstrapDraws | None): Bootstrap draws
    """

    rdidtype: RdidType
    n_obs: int
    profile: SelectionBiasProfile
    estimand: EstimandValue
    bounds: RdidBounds
    level: float
    intervals: dict[CiType, ConfidenceInterval] = field(default_factory=dict)
    po_estimates: dict[LossType, PoRdidEstimate] = field(default_factory=dict)
    po_intervals: dict[LossType, ConfidenceInterval] = field(default_factory=dict)
    forecast: LinearForecast | None = None
    forecast_interval: ConfidenceInterval | None = None
    draws: BootstrapDraws | None = None

    def interval(self, ci_type: CiType) -> ConfidenceInterval:
        """Bounds-type interval by construction."""
        return self.intervals[ci_type]

    def stored_results(self) -> dict[str, float]:
        """
        Scalars keyed by stored-result name.

        Returns:
            N and OLS/DR for every type, plus SB_LB, SB_UB, RDID_LB, RDID_UB and CI1..CI3
            for BOUNDS; L1_PE .. Linf_CI_UB for POLICY; SB_hat, proj_PE, CI_LB, CI_UB for LINEAR
        """
        results: dict[str, float] = {KEY_N: float(self.n_obs), self.estimand.kind.stored_key: self.estimand.value}

        if self.rdidtype is RdidType.BOUNDS:
            results[KEY_SB_LB] = self.bounds.sb_inf
            results[KEY_SB_UB] = self.bounds.sb_sup
            results[KEY_RDID_LB] = self.bounds.lower
            results[KEY_RDID_UB] = self.bounds.upper
            for ci_type, ci in self.intervals.items():
                results[KEY_CI_LB_TEMPLATE.format(index=ci_type.value)] = ci.lower
                results[KEY_CI_UB_TEMPLATE.format(index=ci_type.value)] = ci.upper
        elif self.rdidtype is RdidType.POLICY:
            for loss, estimate in self.po_estimates.items():
                results[KEY_PO_PE_TEMPLATE.format(loss=loss.label)] = estimate.value
                results[KEY_PO_CI_LB_TEMPLATE.format(loss=loss.label)] = self.po_intervals[loss].lower
                results[KEY_PO_CI_UB_TEMPLATE.format(loss=loss.label)] = self.po_intervals[loss].upper
        elif self.forecast is not None and self.forecast_interval is not None:
            results[KEY_SB_HAT] = self.forecast.sb_hat
            results[KEY_PROJ_PE] = self.forecast.value
            results[KEY_CI_LB] = self.forecast_interval.lower
            results[KEY_CI_UB] = self.forecast_interval.upper
        return results


class RobustDID:
    """
    Robust difference-in-differences estimator for a two-group panel.

    The dataset needs treat, post and info roles; covariates switch the post-period
    estimand and the selection biases to their doubly robust form.
    """

    _ds: PanelDataset
    _rdidtype: RdidType
    _peval: float | None
    _plan: BootstrapPlan

    def __init__(
        self,
        ds: PanelDataset,
        rdidtype: RdidType = RdidType.BOUNDS,
        peval: float | None = None,
        plan: BootstrapPlan | None = None,
    ):
        """
        Initialize a RobustDID run.

        Args:
            ds: Validated dataset
            rdidtype: Estimator type
            peval: Evaluation point of the linear forecast (LINEAR only); defaults to
                the mean of the info variable among post-period rows
            plan: Bootstrap settings; defaults to environment-driven BootstrapPlan()

        Raises:
            RoleError: If treat, post or info is not assigned
        """
        ds.roles.for_command(Command.RDID)
        self._ds = ds
        self._rdidtype = RdidType(rdidtype)
        self._peval = peval
        self._plan = plan or BootstrapPlan()

    @property
    def dataset(self) -> PanelDataset:
        return self._ds

    @property
    def plan(self) -> BootstrapPlan:
        return self._plan

    def resolved_peval(self) -> float:
        """Evaluation point actually used by the linear forecast."""
        return default_peval(self._ds) if self._peval is None else float(self._peval)

    def estimate(self) -> RdidResult:
        """
        Run the point estimation and the bootstrap.

        Returns:
            RdidResult for the configured estimator type

        Raises:
            DegenerateCellError: If a cell of the original data is degenerate
            EstimationError: If an estimator fails on the original data
            TooManyFailuresError: If too many replicates are degenerate
        """
        ds = self._ds

        estimand = post_period_estimand(ds)
        profile = selection_bias_profile(ds)
        bounds = rdid_bounds(estimand, profile)
        level = self._plan.level
        n_obs = ds.n_obs

        peval = self.resolved_peval() if self._rdidtype is RdidType.LINEAR else None
        forecast = sb_linear_forecast(profile, estimand, peval) if peval is not None else None
        statistic = RdidStatistic(self._rdidtype, tuple(profile.levels.tolist()), peval)
        draws = cluster_bootstrap(ds, self._plan, statistic)
        logger.debug("rdid: %d successful replicates", draws.successful)

        if self._rdidtype is RdidType.BOUNDS:
            return RdidResult(
                rdidtype=self._rdidtype,
                n_obs=n_obs,
                profile=profile,
                estimand=estimand,
                bounds=bounds,
                level=level,
                intervals=bounds_intervals(bounds, profile, draws.draws, level),
                draws=draws,
            )

        if self._rdidtype is RdidType.POLICY:
            estimates = {loss: po_rdid(estimand, profile, loss) for loss in LOSS_ORDER}
            intervals = {loss: ci_percentile(draws.column(i), level) for i, loss in enumerate(LOSS_ORDER)}
            return RdidResult(
                rdidtype=self._rdidtype,
                n_obs=n_obs,
                profile=profile,
                estimand=estimand,
                bounds=bounds,
                level=level,
                po_estimates=estimates,
                po_intervals=intervals,
                draws=draws,
            )

        return RdidResult(
            rdidtype=self._rdidtype,
            n_obs=n_obs,
            profile=profile,
            estimand=estimand,
            bounds=bounds,
            level=level,
            forecast=forecast,
            forecast_interval=ci_percentile(draws.column(0), level),
            draws=draws,
        )


def bounds_intervals(bounds: RdidBounds, profile: SelectionBiasProfile, draws: np.ndarray, level: float) -> dict[CiType, ConfidenceInterval]:
    """
    Build CI1..CI3 from draws of [estimand, sb_1, ..., sb_J].

    Args:
        bounds: Estimated bounds
        profile: Estimated profile (J entries)
        draws: (replicates, 1 + J) bootstrap draws
        level: Confidence level in percent

    Returns:
        Intervals keyed by construction
    """
    theta = draws[:, :1]
    sb = draws[:, 1:]
    per_level = theta - sb
    bound_draws = np.column_stack([per_level.min(axis=1), per_level.max(axis=1)])
    point = (bounds.lower, bounds.upper)
    return {
        CiType.BOUNDS_YE: ci_bounds_ye(bound_draws, point, level),
        CiType.ATT_YE: ci_att_ye(bound_draws, point, level),
        CiType.UNION: ci_union(per_level, bounds.estimand.value - profile.sb, level),
    }

