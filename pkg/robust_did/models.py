"""
Robust-DID Data Model Definitions

Immutable result types shared by the estimators, the bootstrap engine and the reporting layer.
"""

import math
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from .constants import (
    EMPTY_PROFILE_ERROR,
    NON_FINITE_ESTIMAND_ERROR,
    PROFILE_LEVELS_ERROR,
    PROFILE_WEIGHTS_ERROR,
    WEIGHT_SUM_TOL,
)
from .enums import CiType, EstimandKind, LossType
from .exceptions import EstimationError


@dataclass(frozen=True)
class ProfileEntry:
    """
    One information level of a selection bias profile.

    Attributes:
        level (float): Information level
        sb (float): Estimated selection bias at the level
        weight (float): Share of pre-period observations at the level
    """

    level: float
    sb: float
    weight: float


@dataclass(frozen=True)
class SelectionBiasProfile:
    """
    Estimated selection bias for each information level, with observation-share weights.

    Attributes:
        entries (tuple[ProfileEntry, ...]): Entries sorted by level
    """

    entries: tuple[ProfileEntry, ...]

    def __post_init__(self):
        """Validate ordering and weights after initialization."""
        object.__setattr__(self, "entries", tuple(self.entries))
        if not self.entries:
            raise EstimationError(EMPTY_PROFILE_ERROR)

        levels = self.levels
        if np.any(np.diff(levels) <= 0):
            raise EstimationError(PROFILE_LEVELS_ERROR)

        weights = self.weights
        total = float(weights.sum())
        if np.any(weights < 0) or np.any(weights > 1) or abs(total - 1.0) > WEIGHT_SUM_TOL:
            raise EstimationError(PROFILE_WEIGHTS_ERROR.format(total=total))

    @classmethod
    def from_arrays(cls, levels: Sequence[float], sb: Sequence[float], weights: Sequence[float]) -> "SelectionBiasProfile":
        """Build a profile from parallel sequences."""
        return cls(tuple(ProfileEntry(float(lv), float(s), float(w)) for lv, s, w in zip(levels, sb, weights, strict=True)))

    @property
    def levels(self) -> np.ndarray:
        return np.array([entry.level for entry in self.entries])

    @property
    def sb(self) -> np.ndarray:
        return np.array([entry.sb for entry in self.entries])

    @property
    def weights(self) -> np.ndarray:
        return np.array([entry.weight for entry in self.entries])

    @property
    def sb_min(self) -> float:
        return float(self.sb.min())

    @property
    def sb_max(self) -> float:
        return float(self.sb.max())

    def __len__(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class EstimandValue:
    """
    Post-period estimand.

    Attributes:
        value (float): Estimated difference in means
        kind (EstimandKind): Simple or doubly robust
    """

    value: float
    kind: EstimandKind = EstimandKind.SIMPLE_DIM

    def __post_init__(self):
        if not math.isfinite(self.value):
            raise EstimationError(NON_FINITE_ESTIMAND_ERROR.format(value=self.value))


@dataclass(frozen=True)
class RdidBounds:
    """
    Sharp bounds on the ATT under bias set stability.

    Attributes:
        lower (float): Estimand minus the largest selection bias
        upper (float): Estimand minus the smallest selection bias
        estimand (EstimandValue): Post-period estimand
        sb_inf (float): Smallest selection bias of the profile
        sb_sup (float): Largest selection bias of the profile
    """

    lower: float
    upper: float
    estimand: EstimandValue
    sb_inf: float
    sb_sup: float

    @property
    def width(self) -> float:
        return self.upper - self.lower


@dataclass(frozen=True)
class PoRdidEstimate:
    """
    Policy-oriented point estimate for one loss.

    Attributes:
        loss (LossType): Loss minimized by the selection bias plug-in
        sb_opt (float): Loss-minimizing selection bias
        value (float): Estimand minus sb_opt
    """

    loss: LossType
    sb_opt: float
    value: float


@dataclass(frozen=True)
class LinearForecast:
    """
    Linear prediction of the post-period selection bias from the profile.

    Attributes:
        intercept (float): OLS intercept over profile entries
        slope (float): OLS slope over profile entries
        peval (float): Evaluation point
        sb_hat (float): intercept + slope * peval
        value (float): Estimand minus sb_hat
    """

    intercept: float
    slope: float
    peval: float
    sb_hat: float
    value: float


@dataclass(frozen=True)
class ConfidenceInterval:
    """
    Confidence interval.

    Attributes:
        ci_type (CiType): Construction
        level (float): Confidence level in percent
        lower (float): Lower endpoint
        upper (float): Upper endpoint
    """

    ci_type: CiType
    level: float
    lower: float
    upper: float

    @property
    def length(self) -> float:
        return self.upper - self.lower

    def contains(self, lower: float, upper: float | None = None) -> bool:
        """Check whether a point, or the interval [lower, upper], lies inside."""
        upper = lower if upper is None else upper
        return self.lower <= lower and upper <= self.upper
