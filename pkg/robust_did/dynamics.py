"""
Per-Period RDID Module

Runs the rdid pipeline separately for every post-period level of the time variable
(the rdid-dy command) and collects one row per level.
"""

import logging
from dataclasses import dataclass, field

import numpy as np

from .config import BootstrapPlan
from .constants import (
    CITYPE_ERROR,
    KEY_DY_CI_LB_TEMPLATE,
    KEY_DY_CI_UB_TEMPLATE,
    KEY_DY_LB_TEMPLATE,
    KEY_DY_PE_TEMPLATE,
    KEY_DY_UB_TEMPLATE,
    NO_POST_LEVELS_ERROR,
)
from .core import RdidResult, RobustDID
from .enums import CiType, Command, LossType, RdidType
from .exceptions import ConfigError, EstimationError, InferenceError, PanelDataError
from .models import ConfidenceInterval
from .panel import PanelDataset, VariableRoles
from .utils import format_level


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DynamicConfig:
    """
    Options of a per-period run.

    Attributes:
        rdidtype (RdidType): Estimator type
        citype (CiType): Interval reported for BOUNDS (ignored otherwise)
        losstype (LossType): Loss reported for POLICY (ignored otherwise)
        peval (float | None): Forecast evaluation point override (LINEAR only)
        plan (BootstrapPlan): Bootstrap settings
    """

    rdidtype: RdidType = RdidType.BOUNDS
    citype: CiType = CiType.BOUNDS_YE
    losstype: LossType = LossType.L1
    peval: float | None = None
    plan: BootstrapPlan = field(default_factory=BootstrapPlan)

    def __post_init__(self):
        object.__setattr__(self, "rdidtype", RdidType(self.rdidtype))
        object.__setattr__(self, "citype", CiType(self.citype))
        object.__setattr__(self, "losstype", LossType(self.losstype))
        if self.citype is CiType.PERCENTILE:
            raise ConfigError(CITYPE_ERROR.format(value=self.citype))


@dataclass(frozen=True)
class DynamicRow:
    """
    Result for one post-period level.

    BOUNDS rows carry lower/upper; POLICY and LINEAR rows carry point. A row whose
    estimation failed keeps its level and the error message instead.
    """

    t: float
    lower: float | None = None
    upper: float | None = None
    point: float | None = None
    ci: ConfidenceInterval | None = None
    result: RdidResult | None = None
    error: str | None = None

    @property
    def ok(self) -> bool:
        return self.error is None


@dataclass(frozen=True)
class DynamicResult:
    """
    Rows of a per-period run, ascending in t.
    """

    rows: tuple[DynamicRow, ...]
    config: DynamicConfig
    n_obs: int

    @property
    def periods(self) -> list[float]:
        return [row.t for row in self.rows]

    def stored_results(self) -> dict[str, float]:
        """Scalars keyed RDID_LB_(t), RDID_UB_(t) or RDID_PE_(t), CI_LB_(t) and CI_UB_(t); failed rows are absent."""
        results: dict[str, float] = {}
        for row in self.rows:
            if not row.ok or row.ci is None:
                continue
            t = format_level(row.t)
            if self.config.rdidtype is RdidType.BOUNDS:
                results[KEY_DY_LB_TEMPLATE.format(t=t)] = row.lower
                results[KEY_DY_UB_TEMPLATE.format(t=t)] = row.upper
            else:
                results[KEY_DY_PE_TEMPLATE.format(t=t)] = row.point
            results[KEY_DY_CI_LB_TEMPLATE.format(t=t)] = row.ci.lower
            results[KEY_DY_CI_UB_TEMPLATE.format(t=t)] = row.ci.upper
        return results


def _row_from_result(t: float, result: RdidResult, config: DynamicConfig) -> DynamicRow:
    if config.rdidtype is RdidType.BOUNDS:
        return DynamicRow(
            t=t,
            lower=result.bounds.lower,
            upper=result.bounds.upper,
            ci=result.interval(config.citype),
            result=result,
        )
    if config.rdidtype is RdidType.POLICY:
        return DynamicRow(
            t=t,
            point=result.po_estimates[config.losstype].value,
            ci=result.po_intervals[config.losstype],
            result=result,
        )
    return DynamicRow(t=t, point=result.forecast.value, ci=result.forecast_interval, result=result)


def rdid_by_period(ds: PanelDataset, config: DynamicConfig | None = None, roles: VariableRoles | None = None) -> DynamicResult:
    """
    Run rdid once per post-period level.

    The sample for level t is every pre-period row plus the post-period rows at time t.
    For LINEAR with info equal to time and no peval override, each row is evaluated at
    its own t.

    Args:
        ds: Dataset with treat, post, info and time roles
        config: Per-period options
        roles: Optional role reassignment for ds

    Returns:
        DynamicResult with one row per post-period level; failures become error rows

    Raises:
        RoleError: If a required role is missing
        EstimationError: If there is no post-period level
    """
    config = config or DynamicConfig()
    if roles is not None:
        ds = ds.with_roles(roles)
    roles = ds.roles.for_command(Command.RDID_DY)

    time = ds.time
    is_post = ds.post == 1.0
    levels = np.unique(time[is_post])
    if levels.size == 0:
        raise EstimationError(NO_POST_LEVELS_ERROR)

    info_is_time = roles.info == roles.time
    rows = []
    for t in levels:
        sample = ds.subset(~is_post | (time == t))
        peval = config.peval
        if peval is None and config.rdidtype is RdidType.LINEAR and info_is_time:
            peval = float(t)
        try:
            result = RobustDID(sample, config.rdidtype, peval=peval, plan=config.plan).estimate()
        except (PanelDataError, EstimationError, InferenceError) as e:
            logger.warning("Period %s failed: %s", format_level(t), e)
            rows.append(DynamicRow(t=float(t), error=str(e)))
            continue
        rows.append(_row_from_result(float(t), result, config))

    return DynamicResult(rows=tuple(rows), config=config, n_obs=ds.n_obs)
