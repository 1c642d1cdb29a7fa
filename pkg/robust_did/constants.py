"""
Robust-DID Constants

Numeric defaults, stored-result key templates, table labels and error message templates.
"""

# ========== Numeric defaults ==========

DEFAULT_BREP = 500
DEFAULT_LEVEL = 95.0
DEFAULT_SEED = 20240601
DEFAULT_N_JOBS = 1

# Share of bootstrap replicates that may fail before inference aborts
MAX_BOOTSTRAP_FAILURE_SHARE = 0.2

# Logistic propensity fit (IRLS)
IRLS_MAX_ITER = 100
IRLS_TOL = 1e-10
IRLS_MAX_HALVINGS = 30
PROPENSITY_TRIM = 1e-6

# Imbens-Manski critical value bisection
CRITICAL_VALUE_TOL = 1e-10

# Weights must sum to one within this tolerance
WEIGHT_SUM_TOL = 1e-12

# Slack on the 0.5 cumulative-weight threshold of the weighted median
MEDIAN_THRESHOLD_SLACK = 1e-12

# Table rendering
TABLE_LABEL_WIDTH = 16
TABLE_COLUMN_WIDTH = 10
TABLE_DECIMALS = 4

# Deterministic SVG output
SVG_HASH_SALT = "robust-did"

# ========== Stored-result keys ==========

KEY_N = "N"
KEY_SB_LB = "SB_LB"
KEY_SB_UB = "SB_UB"
KEY_RDID_LB = "RDID_LB"
KEY_RDID_UB = "RDID_UB"
KEY_CI_LB_TEMPLATE = "CI{index}_LB"
KEY_CI_UB_TEMPLATE = "CI{index}_UB"
KEY_PO_PE_TEMPLATE = "{loss}_PE"
KEY_PO_CI_LB_TEMPLATE = "{loss}_CI_LB"
KEY_PO_CI_UB_TEMPLATE = "{loss}_CI_UB"
KEY_SB_HAT = "SB_hat"
KEY_PROJ_PE = "proj_PE"
KEY_CI_LB = "CI_LB"
KEY_CI_UB = "CI_UB"

# rdid_dy keys, (t) is the formatted period
KEY_DY_LB_TEMPLATE = "RDID_LB_{t}"
KEY_DY_UB_TEMPLATE = "RDID_UB_{t}"
KEY_DY_PE_TEMPLATE = "RDID_PE_{t}"
KEY_DY_CI_LB_TEMPLATE = "CI_LB_{t}"
KEY_DY_CI_UB_TEMPLATE = "CI_UB_{t}"

# rdidstag keys, (g) and (t) are the formatted cohort and period
KEY_STAG_LB_TEMPLATE = "RDID_LB_{g}_{t}"
KEY_STAG_UB_TEMPLATE = "RDID_UB_{g}_{t}"
KEY_STAG_CI_LB_TEMPLATE = "CI_LB_{g}_{t}"
KEY_STAG_CI_UB_TEMPLATE = "CI_UB_{g}_{t}"

# ========== Table notes ==========

NOTE_RDID_POINT = "* RDID: Point estimates for RDID bounds"
NOTE_CI_BY_TYPE = {
    1: "* CI_1: Confidence interval for the bounds (Ye et al.)",
    2: "* CI_2: Confidence interval for the ATT (Ye et al.)",
    3: "* CI_3: Confidence interval for the bounds (Union Bounds)",
}
NOTE_DY_CI_BY_TYPE = {
    1: "* Confidence intervals are obtained for the bounds (Ye et al.)",
    2: "* Confidence intervals are obtained for the ATT (Ye et al.)",
    3: "* Confidence intervals are obtained for the bounds (Union Bounds)",
}
NOTE_DY_PO_TEMPLATE = "* RDID estimates are obtained as PO-RDID estimates ({loss})"
NOTE_DY_LINEAR = "* RDID estimates are obtained with linear predictions"
NOTE_DY_ERROR_TEMPLATE = "* {t}: {error}"
NOTE_STAG_INFO_TEMPLATE = "- Information elements: {levels}"
NOTE_STAG_POST_TEMPLATE = "- Post-periods: {levels}"
NOTE_STAG_GROUPS_TEMPLATE = "- Groups: {levels}"
NOTE_STAG_ERROR_TEMPLATE = "* ATT({g}/{t}): {error}"

# ========== Log messages ==========

LOG_ROWS_DROPPED = "Dropped %d row(s) with missing values in role columns"
LOG_BOOTSTRAP_FAILURES = "Bootstrap: %d of %d replicates were degenerate and skipped"
LOG_STAG_POST_DEFAULT = "postname is not specified: using units with T >= min(G) as post-period units."
LOG_STAG_INFO_DEFAULT = "infoname is not specified: using pre-period T < min(G) as the information set."

# ========== Error message constants ==========

# Roles
ROLE_MISSING_ERROR = "Command '{command}' requires the {role} role"
ROLE_NOT_ALLOWED_ERROR = "Command '{command}' does not accept the {role} role"
ROLE_DUPLICATE_ERROR = "Roles {first} and {second} both use column '{column}'"
ROLE_OUTCOME_REQUIRED_ERROR = "The outcome role is required"
ROLE_NOT_ASSIGNED_ERROR = "The {role} role is not assigned"

# Panel data
MISSING_COLUMN_ERROR = "Column '{column}' not found in the input header"
NON_BINARY_ERROR = "Column '{column}' must contain only 0 and 1"
NON_NUMERIC_ERROR = "Column '{column}' has a non-numeric or non-finite value at data row {row}"
MISSING_VALUE_ERROR = "Column '{column}' has a missing value at data row {row}; enable drop_missing to delete such rows"
EMPTY_AFTER_FILTER_ERROR = "No observations left after filtering"
DEGENERATE_CELL_ERROR = "Information level {level} lacks treated or control observations"
DEGENERATE_POST_ERROR = "The post-period sample lacks treated or control observations"
DEGENERATE_GROUP_ERROR = "Difference in means needs at least one treated and one control observation"
INFO_ROLE_REQUIRED_ERROR = "Splitting into cells requires the info role"
POST_ROLE_REQUIRED_ERROR = "Selecting pre-period rows requires the post role"
NO_PRE_ROWS_ERROR = "No pre-period observations"
NO_POST_LEVELS_ERROR = "No post-period levels of the time variable"
CSV_PARSE_ERROR = "Input is not a readable UTF-8 CSV file with a header row: {error}"

# Estimation
IRLS_DIVERGED_ERROR = "Propensity score fit did not converge within {max_iter} iterations"
PROPENSITY_DEGENERATE_ERROR = "All fitted propensity scores lie on the trimming boundary"
SINGULAR_DESIGN_ERROR = "Design matrix of the {model} is rank deficient"
COVARIATES_REQUIRED_ERROR = "The doubly robust estimand needs at least one covariate"
INSUFFICIENT_LEVELS_ERROR = "Linear forecast needs at least two distinct information levels, got {count}"
EMPTY_PROFILE_ERROR = "Selection bias profile must have at least one entry"
NON_FINITE_ESTIMAND_ERROR = "Post-period estimand is not finite: {value}"
PROFILE_LEVELS_ERROR = "Selection bias profile levels must be strictly increasing"
PROFILE_WEIGHTS_ERROR = "Selection bias profile weights must lie in [0, 1] and sum to 1, got sum {total}"
NO_PRE_PERIODS_ERROR = "No information periods before the earliest treated cohort {g_min}"
NO_NEVER_TREATED_ERROR = "No never-treated (cohort 0) observations"
NO_TREATED_COHORTS_ERROR = "No treated cohorts found"
INVALID_COHORT_ERROR = "Cohort {g} is not a treated cohort of the dataset"

# Inference
TOO_MANY_FAILURES_ERROR = "Bootstrap failed in {failures} of {replicates} replicates (more than {share:.0%})"
DRAWS_SHAPE_ERROR = "Bootstrap draws must be a non-empty {expected} array"

# Configuration
INVALID_INT_ENV_ERROR = "Invalid {name} value in {env_var} environment variable: '{value}'. Expected an integer (e.g., '{example}')."
INVALID_FLOAT_ENV_ERROR = "Invalid {name} value in {env_var} environment variable: '{value}'. Expected a numeric value (e.g., '{example}')."
REPLICATES_ERROR = "Bootstrap replicates must be at least 2, got {value}"
LEVEL_ERROR = "Confidence level must satisfy 0 < level < 100, got {value}"
SEED_ERROR = "Seed must be a non-negative integer, got {value}"
N_JOBS_ERROR = "n_jobs must be a positive integer or -1, got {value}"
CITYPE_ERROR = "citype must be 1, 2 or 3 for per-period bounds, got {value}"

# Simulation
DGP_N_ERROR = "A data generating process needs n >= 10 units, got {value}"
DGP_P_ERROR = "Bernoulli parameter p must lie in (0, 1), got {value}"
DGP_HORIZON_ERROR = "Horizon T must be at least 1, got {value}"
DGP_POST_PERIODS_ERROR = "Post periods must be 1 or 2 (later periods leave the selection bias hull), got {value}"
DGP_CROSS_SECTION_ERROR = "The staggered design follows units over time and has no cross-section layout"
SIMS_ERROR = "Number of simulations must be at least 1, got {value}"

# Reporting
EMPTY_SERIES_ERROR = "Cannot draw a figure from an empty series"
FIGURE_WRITE_ERROR = "Failed to write figure '{path}': {error}"
EXPORT_WRITE_ERROR = "Failed to write '{path}': {error}"

# Simulated panel column names
SIM_UNIT_COLUMN = "id"
SIM_TIME_COLUMN = "t"
SIM_OUTCOME_COLUMN = "y"
SIM_TREAT_COLUMN = "d"
SIM_POST_COLUMN = "post"
SIM_COVARIATE_COLUMN = "x"
SIM_COHORT_COLUMN = "g"

# ========== Report labels ==========

TABLE_MISSING_VALUE = "."
LABEL_OUTCOME_TEMPLATE = "Y: {outcome}"
LABEL_TIME_TEMPLATE = "T: {time}"
LABEL_STAG_TITLE = "ATT(G/T)"
LABEL_STAG_ROW_TEMPLATE = "ATT({g}/{t})"
LABEL_CI_ROW_TEMPLATE = "CI_{index}"
LABEL_SIM_TITLE_TEMPLATE = "{dgp}, N={n}"
LABEL_TRUTH_TITLE = "Identified set"
NOTE_PO = "* PE: PO-RDID point estimates; CIs are bootstrap percentile intervals"
NOTE_LINEAR_TEMPLATE = "* SB_hat: Linear prediction of the post-period selection bias at {peval}"
NOTE_SIM_TEMPLATE = "* {sims} simulations, {failures} failed"
NOTE_TRUTH_TEMPLATE = "* c = alpha_1 - alpha_0 = {c:.6f}"

# Simulation report keys
KEY_SIM_CP_TEMPLATE = "CP_{index}"
KEY_SIM_LENGTH_TEMPLATE = "LEN_{index}"
KEY_SIM_STAG_CP_TEMPLATE = "CP_{g}_{t}"
KEY_SIM_STAG_LENGTH_TEMPLATE = "LEN_{g}_{t}"
KEY_TRUTH_ATT_TEMPLATE = "ATT_{cell}"
KEY_TRUTH_LB_TEMPLATE = "THETA_LB_{cell}"
KEY_TRUTH_UB_TEMPLATE = "THETA_UB_{cell}"

# Payload
PAYLOAD_FIELD_ERROR = "Payload is missing the '{field}' field"
PAYLOAD_READ_ERROR = "Failed to read payload '{path}': {error}"
SERIES_LENGTH_ERROR = "Figure series '{name}' has {actual} points, expected {expected}"

# ========== Command line ==========

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DATA = 3
EXIT_ESTIMATION = 4
EXIT_IO = 5

CLI_LOG_FORMAT = "%(levelname)s %(name)s: %(message)s"
FIGURE_SUFFIX = ".svg"
COHORT_FIGURE_TEMPLATE = "{stem}_g{g}.svg"
LOSSTYPE_ERROR = "losstype must be one of L1, L2, Linf (or 1, 2, 0), got '{value}'"
ALL_PERIODS_FAILED_ERROR = "Every post-period level failed; first error: {error}"
ALL_CELLS_FAILED_ERROR = "Every ATT(g/t) cell failed; first error: {error}"
LOG_FIGURE_SKIPPED = "No estimable cells for cohort %s: figure skipped"
