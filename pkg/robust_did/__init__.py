"""
Robust-DID Core Components

Robust difference-in-differences estimation for long-format panel data. Instead of
parallel trends, the post-period selection bias is assumed to lie in the convex hull of
the selection biases observed over a pre-treatment information set.

Core Features:
    - Sharp bounds on the ATT from the selection bias profile
    - Policy-oriented point estimates under L1, L2 and L-infinity losses
    - Linear prediction of the post-period selection bias over ordered information
    - Doubly robust post-period estimand when covariates are supplied
    - Cluster bootstrap with three interval constructions for the bounds
    - Per-period runs and staggered-adoption ATT(g, t) tables
    - Monte-Carlo designs with analytic identified sets and coverage studies

Basic Usage:
    from robust_did import BootstrapPlan, RobustDID, VariableRoles, load_panel

    roles = VariableRoles(outcome="y", treat="d", post="post", info="t", cluster="id")
    ds = load_panel("panel.csv", roles)
    result = RobustDID(ds, plan=BootstrapPlan(replicates=500, seed=1)).estimate()
    result.bounds.lower, result.bounds.upper
    result.stored_results()["CI1_LB"]
"""

from .config import BootstrapPlan, RuntimeConfig
from .core import RdidResult, RdidStatistic, RobustDID, bounds_intervals
from .dynamics import DynamicConfig, DynamicResult, DynamicRow, rdid_by_period
from .enums import CiType, Command, DgpKind, EstimandKind, FigureKind, LossType, RdidType
from .estimation import (
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
from .exceptions import (
    ConfigError,
    DegenerateCellError,
    EmptyAfterFilterError,
    EstimationError,
    InferenceError,
    InsufficientLevelsError,
    InvalidCohortError,
    IrlsDivergedError,
    MissingColumnError,
    MissingValueError,
    NoNeverTreatedError,
    NonBinaryError,
    NonNumericError,
    NoPrePeriodsError,
    PanelDataError,
    PropensityDegenerateError,
    ReportError,
    RobustDIDError,
    RoleError,
    SingularDesignError,
    TooManyFailuresError,
)
from .inference import BootstrapDraws, ci_att_ye, ci_bounds_ye, ci_percentile, ci_union, cluster_bootstrap
from .models import (
    ConfidenceInterval,
    EstimandValue,
    LinearForecast,
    PoRdidEstimate,
    ProfileEntry,
    RdidBounds,
    SelectionBiasProfile,
)
from .panel import Cell, PanelDataset, VariableRoles, load_panel, split_cells
from .staggered import CohortTimeCell, StaggeredDesign, StaggeredResult, cohort_sb_profile, resolve_stag_defaults, staggered_table


__all__ = [
    # Core classes
    "RobustDID",
    "RdidResult",
    "RdidStatistic",
    "bounds_intervals",
    # Panel data
    "VariableRoles",
    "PanelDataset",
    "Cell",
    "load_panel",
    "split_cells",
    # Estimation
    "diff_in_means",
    "dr_diff_in_means",
    "post_period_estimand",
    "selection_bias_profile",
    "rdid_bounds",
    "po_rdid",
    "weighted_median",
    "sb_linear_forecast",
    "default_peval",
    # Inference
    "BootstrapDraws",
    "cluster_bootstrap",
    "ci_bounds_ye",
    "ci_att_ye",
    "ci_union",
    "ci_percentile",
    # Per-period and staggered runs
    "DynamicConfig",
    "DynamicResult",
    "DynamicRow",
    "rdid_by_period",
    "StaggeredDesign",
    "CohortTimeCell",
    "StaggeredResult",
    "resolve_stag_defaults",
    "cohort_sb_profile",
    "staggered_table",
    # Models
    "ProfileEntry",
    "SelectionBiasProfile",
    "EstimandValue",
    "RdidBounds",
    "PoRdidEstimate",
    "LinearForecast",
    "ConfidenceInterval",
    # Configuration
    "BootstrapPlan",
    "RuntimeConfig",
    # Enumerations
    "RdidType",
    "LossType",
    "CiType",
    "EstimandKind",
    "DgpKind",
    "FigureKind",
    "Command",
    # Exceptions
    "RobustDIDError",
    "ConfigError",
    "RoleError",
    "PanelDataError",
    "MissingColumnError",
    "NonBinaryError",
    "NonNumericError",
    "MissingValueError",
    "EmptyAfterFilterError",
    "DegenerateCellError",
    "EstimationError",
    "IrlsDivergedError",
    "PropensityDegenerateError",
    "SingularDesignError",
    "InsufficientLevelsError",
    "NoPrePeriodsError",
    "NoNeverTreatedError",
    "InvalidCohortError",
    "InferenceError",
    "TooManyFailuresError",
    "ReportError",
]

__version__ = "0.1.0"
