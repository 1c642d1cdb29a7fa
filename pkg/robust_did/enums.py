"""
Robust-DID Enumeration Definitions

Defines the estimator, loss, confidence-interval and command enumerations used throughout the package.
"""

from enum import Enum, IntEnum


class RdidType(IntEnum):
    """
    RDID estimator type.

    Integer codes follow the ``rdidtype(#)`` option of the commands.
    """

    BOUNDS = 0  # Simple RDID bounds
    POLICY = 1  # Policy-oriented (PO) RDID
    LINEAR = 2  # RDID with linear predictions


class LossType(IntEnum):
    """
    Loss function for PO-RDID.

    Integer codes follow the ``losstype(#)`` option: 1 for L1, 2 for L2 and 0 for L-infinity.
    """

    LINF = 0
    L1 = 1
    L2 = 2

    @property
    def label(self) -> str:
        """Label used in tables and stored-result keys."""
        return {LossType.L1: "L1", LossType.L2: "L2", LossType.LINF: "Linf"}[self]


class CiType(Enum):
    """
    Confidence interval construction.
    """

    BOUNDS_YE = 1  # CI for the bounds (Ye et al.)
    ATT_YE = 2  # CI for the ATT (Ye et al.)
    UNION = 3  # CI for the bounds (union bounds)
    PERCENTILE = "percentile"  # Bootstrap percentile CI for point estimates


class EstimandKind(Enum):
    """
    Post-period estimand kind.
    """

    SIMPLE_DIM = "simple_dim"  # Difference in means, stored as OLS
    DOUBLY_ROBUST = "doubly_robust"  # AIPW difference in means, stored as DR

    @property
    def stored_key(self) -> str:
        """Stored-result key of the estimand."""
        return "OLS" if self is EstimandKind.SIMPLE_DIM else "DR"


class DgpKind(Enum):
    """
    Monte-Carlo data generating processes.
    """

    ASHENFELTER_DIP = "ashenfelter"  # Pre-treatment dip design with three pre-periods
    COVARIATE_EXAMPLE = "covariate"  # Binary covariate as the information set
    STAGGERED = "staggered"  # Staggered adoption with a never-treated cohort


class Command(Enum):
    """
    Command-line subcommands.
    """

    RDID = "rdid"
    RDID_DY = "rdid-dy"
    RDIDSTAG = "rdidstag"
    SIMULATE = "simulate"


class FigureKind(Enum):
    """
    SVG figure layouts.
    """

    SCATTER = "scatter"  # Points, e.g. selection bias against information level
    BAND = "band"  # Paired lines with a shaded interval band
