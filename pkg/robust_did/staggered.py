"""
Staggered Adoption Module

Cohort-time RDID bounds against the never-treated cohort (the rdidstag command).

Each treated cohort g is compared with cohort 0 (never treated). Its selection bias
profile is estimated once over the information periods and shared by every post
period t, so the bounds width is constant across t for a given cohort.
"""

import logging
from dataclasses import dataclass

import numpy as np

from .config import BootstrapPlan
from .constants import (
    INVALID_COHORT_ERROR,
    KEY_STAG_CI_LB_TEMPLATE,
    KEY_STAG_CI_UB_TEMPLATE,
    KEY_STAG_LB_TEMPLATE,
    KEY_STAG_UB_TEMPLATE,
    LOG_STAG_INFO_DEFAULT,
    LOG_STAG_POST_DEFAULT,
    NO_NEVER_TREATED_ERROR,
    NO_POST_LEVELS_ERROR,
    NO_PRE_PERIODS_ERROR,
    NO_TREATED_COHORTS_ERROR,
)
from .enums import Command
from .estimation import post_period_estimand, rdid_bounds, selection_bias_profile
from .exceptions import (
    EstimationError,
    InferenceError,
    InvalidCohortError,
    NoNeverTreatedError,
    NoPrePeriodsError,
    PanelDataError,
)
from .inference import ci_bounds_ye, cluster_bootstrap
from .models import ConfidenceInterval, EstimandValue, RdidBounds, SelectionBiasProfile
from .panel import PanelDataset, VariableRoles
from .utils import format_level


logger = logging.getLogger(__name__)

# Synthetic columns of a cohort comparison view
COHORT_TREAT_COLUMN = "__cohort_treat"
COHORT_POST_COLUMN = "__cohort_post"
COHORT_INFO_COLUMN = "__cohort_info"


@dataclass(frozen=True)
class StaggeredDesign:
    """
    Resolved post periods and information set of a staggered dataset.

    Attributes:
        g_min (float): Earliest treated cohort
        groups (tuple[float, ...]): Treated cohorts, ascending
        post_periods (tuple[float, ...]): Distinct times of post-period rows
        info_levels (tuple[float, ...]): Distinct information levels of pre-period rows
        post_mask (np.ndarray): Post-period rows
        pre_mask (np.ndarray): Rows in the information set
        info_values (np.ndarray): Information level of every row
    """

    g_min: float
    groups: tuple[float, ...]
    post_periods: tuple[float, ...]
    info_levels: tuple[float, ...]
    post_mask: np.ndarray
    pre_mask: np.ndarray
    info_values: np.ndarray


@dataclass(frozen=True)
class CohortTimeCell:
    """
    Bounds on ATT(g, t).

    Attributes:
        g (float): Treated cohort
        t (float): Post period
        theta_dim (EstimandValue | None): Cohort-g minus never-treated difference at t
        bounds (RdidBounds | None): Bounds from the cohort's shared profile
        ci (ConfidenceInterval | None): Bounds-type confidence interval
        error (str | None): Failure message when the cell could not be computed
    """

    g: float
    t: float
    theta_dim: EstimandValue | None = None
    bounds: RdidBounds | None = None
    ci: ConfidenceInterval | None = None
    error: str | None = None

    @property
    def ok(self) -> bool:
        return self.error is None


@dataclass(frozen=True)
class StaggeredResult:
    """
    Complete cohort-time table, ordered by cohort then period.
    """

    cells: tuple[CohortTimeCell, ...]
    design: StaggeredDesign
    profiles: dict[float, SelectionBiasProfile]
    n_obs: int
    level: float

    def cohort_cells(self, g: float) -> list[CohortTimeCell]:
        return [cell for cell in self.cells if cell.g == g]

    def stored_results(self) -> dict[str, float]:
        """Scalars keyed RDID_LB_(g)_(t), RDID_UB_(g)_(t), CI_LB_(g)_(t) and CI_UB_(g)_(t); failed cells are absent."""
        results: dict[str, float] = {}
        for cell in self.cells:
            if not cell.ok:
                continue
            g, t = format_level(cell.g), format_level(cell.t)
            results[KEY_STAG_LB_TEMPLATE.format(g=g, t=t)] = cell.bounds.lower
            results[KEY_STAG_UB_TEMPLATE.format(g=g, t=t)] = cell.bounds.upper
            results[KEY_STAG_CI_LB_TEMPLATE.format(g=g, t=t)] = cell.ci.lower
            results[KEY_STAG_CI_UB_TEMPLATE.format(g=g, t=t)] = cell.ci.upper
        return results


def resolve_stag_defaults(ds: PanelDataset, roles: VariableRoles | None = None) -> StaggeredDesign:
    """
    Resolve post periods and information set.

    Without a post role, rows with time >= g_min are post-period rows; without an info
    role, the information set is the periods before g_min, indexed by time.

    Args:
        ds: Dataset with cohort and time roles
        roles: Optional role reassignment for ds

    Returns:
        StaggeredDesign

    Raises:
        InvalidCohortError: If there is no treated cohort
        NoNeverTreatedError: If no row has cohort 0
        NoPrePeriodsError: If the information set is empty
        EstimationError: If there is no post period
    """
    if roles is not None:
        ds = ds.with_roles(roles)
    roles = ds.roles.for_command(Command.RDIDSTAG)

    cohort = ds.cohort
    time = ds.time
    groups = np.unique(cohort[cohort != 0])
    if groups.size == 0:
        raise InvalidCohortError(NO_TREATED_COHORTS_ERROR)
    if not np.any(cohort == 0):
        raise NoNeverTreatedError(NO_NEVER_TREATED_ERROR)
    g_min = float(groups[0])

    if roles.post:
        post_mask = ds.post == 1.0
    else:
        logger.info(LOG_STAG_POST_DEFAULT)
        post_mask = time >= g_min

    if roles.info:
        info_values = ds.info
        pre_mask = ~post_mask
    else:
        logger.info(LOG_STAG_INFO_DEFAULT)
        info_values = time
        pre_mask = ~post_mask & (time < g_min)

    info_levels = np.unique(info_values[pre_mask])
    if info_levels.size == 0:
        raise NoPrePeriodsError(NO_PRE_PERIODS_ERROR.format(g_min=format_level(g_min)))
    post_periods = np.unique(time[post_mask])
    if post_periods.size == 0:
        raise EstimationError(NO_POST_LEVELS_ERROR)

    return StaggeredDesign(
        g_min=g_min,
        groups=tuple(groups.tolist()),
        post_periods=tuple(post_periods.tolist()),
        info_levels=tuple(info_levels.tolist()),
        post_mask=post_mask,
        pre_mask=pre_mask,
        info_values=info_values,
    )


def cohort_view(ds: PanelDataset, design: StaggeredDesign, g: float) -> PanelDataset:
    """
    Two-group dataset comparing cohort g with the never-treated cohort.

    Keeps rows of cohorts g and 0 that lie in the information set or the post periods;
    treat marks cohort g, post marks post-period rows and info holds the information level.

    Raises:
        InvalidCohortError: If g is not a treated cohort of the design
    """
    if g == 0 or g not in design.groups:
        raise InvalidCohortError(INVALID_COHORT_ERROR.format(g=format_level(g)))

    cohort = ds.cohort
    keep = ((cohort == g) | (cohort == 0)) & (design.pre_mask | design.post_mask)
    columns = {name: values[keep] for name, values in ds.columns.items()}
    columns[COHORT_TREAT_COLUMN] = (cohort[keep] == g).astype(np.float64)
    columns[COHORT_POST_COLUMN] = design.post_mask[keep].astype(np.float64)
    columns[COHORT_INFO_COLUMN] = design.info_values[keep].astype(np.float64)

    roles = VariableRoles(
        outcome=ds.roles.outcome,
        treat=COHORT_TREAT_COLUMN,
        post=COHORT_POST_COLUMN,
        info=COHORT_INFO_COLUMN,
        time=ds.roles.time,
        cluster=ds.roles.cluster,
        covariates=ds.roles.covariates,
    )
    return PanelDataset(roles=roles, columns=columns)


def cohort_sb_profile(ds: PanelDataset, g: float, design: StaggeredDesign | None = None) -> SelectionBiasProfile:
    """
    Selection bias profile of cohort g against the never-treated cohort.

    Args:
        ds: Staggered dataset (covariates switch to the doubly robust form)
        g: Treated cohort
        design: Resolved design; resolved from ds when omitted

    Returns:
        SelectionBiasProfile over the information levels

    Raises:
        InvalidCohortError: If g is 0 or not a treated cohort
        DegenerateCellError: If an information level lacks cohort-g or never-treated rows
    """
    design = design or resolve_stag_defaults(ds)
    return selection_bias_profile(cohort_view(ds, design, g))


@dataclass(frozen=True)
class CohortStatistic:
    """Flattened [L_t1, U_t1, L_t2, U_t2, ...] of one cohort, for joint bootstrap draws."""

    periods: tuple[float, ...]
    levels: tuple[float, ...]

    def __call__(self, view: PanelDataset) -> np.ndarray:
        profile = selection_bias_profile(view, levels=self.levels)
        values = []
        for t in self.periods:
            estimand = post_period_estimand(view, rows=_period_rows(view, t))
            bounds = rdid_bounds(estimand, profile)
            values.extend((bounds.lower, bounds.upper))
        return np.array(values)


def _period_rows(view: PanelDataset, t: float) -> np.ndarray:
    return np.flatnonzero((view.post == 1.0) & (view.time == t))


def staggered_table(ds: PanelDataset, plan: BootstrapPlan | None = None, roles: VariableRoles | None = None) -> StaggeredResult:
    """
    Bounds and confidence intervals for every treated cohort g and post period t.

    Cells with t < g are included. The bootstrap resamples clusters once per cohort and
    recomputes every cell of that cohort from each resample.

    Args:
        ds: Dataset with outcome, cohort and time roles
        plan: Bootstrap settings
        roles: Optional role reassignment for ds

    Returns:
        StaggeredResult; failing cells carry an error message

    Raises:
        NoNeverTreatedError, NoPrePeriodsError, InvalidCohortError: From resolve_stag_defaults
    """
    plan = plan or BootstrapPlan()
    if roles is not None:
        ds = ds.with_roles(roles)
    design = resolve_stag_defaults(ds)

    cells: list[CohortTimeCell] = []
    profiles: dict[float, SelectionBiasProfile] = {}
    for g in design.groups:
        view = cohort_view(ds, design, g)
        try:
            profile = selection_bias_profile(view)
        except (PanelDataError, EstimationError) as e:
            logger.warning("Cohort %s failed: %s", format_level(g), e)
            cells.extend(CohortTimeCell(g=g, t=t, error=str(e)) for t in design.post_periods)
            continue
        profiles[g] = profile

        point_cells: dict[float, CohortTimeCell] = {}
        for t in design.post_periods:
            try:
                estimand = post_period_estimand(view, rows=_period_rows(view, t))
            except (PanelDataError, EstimationError) as e:
                point_cells[t] = CohortTimeCell(g=g, t=t, error=str(e))
                continue
            point_cells[t] = CohortTimeCell(g=g, t=t, theta_dim=estimand, bounds=rdid_bounds(estimand, profile))

        good = tuple(t for t, cell in point_cells.items() if cell.ok)
        draws = None
        if good:
            try:
                draws = cluster_bootstrap(view, plan, CohortStatistic(good, tuple(profile.levels.tolist())))
            except InferenceError as e:
                for t in good:
                    point_cells[t] = CohortTimeCell(g=g, t=t, error=str(e))
                good = ()

        for index, t in enumerate(good):
            cell = point_cells[t]
            ci = ci_bounds_ye(draws.draws[:, 2 * index : 2 * index + 2], (cell.bounds.lower, cell.bounds.upper), plan.level)
            point_cells[t] = CohortTimeCell(g=g, t=t, theta_dim=cell.theta_dim, bounds=cell.bounds, ci=ci)

        cells.extend(point_cells[t] for t in design.post_periods)

    return StaggeredResult(cells=tuple(cells), design=design, profiles=profiles, n_obs=ds.n_obs, level=plan.level)
