"""
Robust-DID Exception Definitions

Defines exception types that may be raised by data ingestion, estimation, inference and reporting,
used for error handling and for mapping failures onto command-line exit codes.
"""


class RobustDIDError(Exception):
    """
    Base exception class for Robust-DID components.

    All Robust-DID related exceptions inherit from this class for unified
    exception handling and catching.
    """


class ConfigError(RobustDIDError, ValueError):
    """
    Configuration error exception.

    Triggered by:
        - Non-numeric values in RDID_* environment variables
        - Bootstrap replicates below 2 or confidence level outside (0, 100)
    """


class RoleError(RobustDIDError):
    """
    Variable role error exception.

    Triggered by:
        - A role required by the command is not assigned
        - Two roles share one column (except info and time)
        - A role the command does not accept is assigned
    """


# ========== Panel data ==========


class PanelDataError(RobustDIDError):
    """
    Base class for data ingestion and validation failures.
    """


class MissingColumnError(PanelDataError):
    """
    Raised when a role column is absent from the CSV header.
    """

    def __init__(self, message: str, column: str):
        super().__init__(message)
        self.column = column


class NonBinaryError(PanelDataError):
    """
    Raised when a treatment or post column holds values outside {0, 1}.
    """

    def __init__(self, message: str, column: str):
        super().__init__(message)
        self.column = column


class NonNumericError(PanelDataError):
    """
    Raised when a role column holds a value that does not parse as a finite number.
    """

    def __init__(self, message: str, column: str, row: int):
        super().__init__(message)
        self.column = column
        self.row = row


class MissingValueError(PanelDataError):
    """
    Raised when a role column holds a blank cell and listwise deletion is off.
    """

    def __init__(self, message: str, column: str, row: int):
        super().__init__(message)
        self.column = column
        self.row = row


class EmptyAfterFilterError(PanelDataError):
    """
    Raised when no observation survives ingestion filtering or sample selection.
    """


class DegenerateCellError(PanelDataError):
    """
    Degenerate cell exception.

    Triggered by:
        - An information level without treated or without control observations
        - A post-period sample without one of the two groups
        - A bootstrap resample that empties a cell (counted as a replicate failure)
    """

    def __init__(self, message: str, level: float | None = None):
        super().__init__(message)
        self.level = level


# ========== Estimation ==========


class EstimationError(RobustDIDError):
    """
    Base class for estimator failures.
    """


class IrlsDivergedError(EstimationError):
    """
    Raised when the logistic propensity fit does not converge within the iteration budget.
    A bootstrap replicate raising it counts as a failed replicate.
    """


class PropensityDegenerateError(EstimationError):
    """
    Raised when every fitted propensity sits on a trimming boundary.
    A bootstrap replicate raising it counts as a failed replicate.
    """


class SingularDesignError(EstimationError):
    """
    Raised when a regression design matrix is rank deficient.
    """


class InsufficientLevelsError(EstimationError):
    """
    Raised when a linear forecast is requested over fewer than two information levels.
    """


class NoPrePeriodsError(EstimationError):
    """
    Raised when a staggered design has no period before the earliest treated cohort.
    """


class NoNeverTreatedError(EstimationError):
    """
    Raised when a staggered design has no never-treated (cohort 0) rows.
    """


class InvalidCohortError(EstimationError):
    """
    Raised when a cohort is not a treated cohort of the dataset (including cohort 0).
    """


# ========== Inference ==========


class InferenceError(RobustDIDError):
    """
    Base class for bootstrap and confidence-interval failures.
    """


class TooManyFailuresError(InferenceError):
    """
    Raised when more than the tolerated share of bootstrap replicates is degenerate.
    """

    def __init__(self, message: str, failures: int, replicates: int):
        super().__init__(message)
        self.failures = failures
        self.replicates = replicates


# ========== Reporting ==========


class ReportError(RobustDIDError):
    """
    Reporting error exception.

    Triggered by:
        - Emitting a figure from an empty series
        - Failing to write a figure, JSON or CSV file
    """
