"""
Data Generating Processes

Monte-Carlo designs with known identified sets: the pre-treatment dip, the binary
covariate example and staggered adoption. Normal variates are inverse-CDF transforms
of the generator's uniform stream.
"""

from dataclasses import dataclass

import numpy as np
import pandas as pd
from scipy import stats

from ..constants import (
    DEFAULT_SEED,
    DGP_CROSS_SECTION_ERROR,
    DGP_HORIZON_ERROR,
    DGP_N_ERROR,
    DGP_P_ERROR,
    DGP_POST_PERIODS_ERROR,
    SIM_COHORT_COLUMN,
    SIM_COVARIATE_COLUMN,
    SIM_OUTCOME_COLUMN,
    SIM_POST_COLUMN,
    SIM_TIME_COLUMN,
    SIM_TREAT_COLUMN,
    SIM_UNIT_COLUMN,
)
from ..enums import DgpKind
from ..exceptions import ConfigError
from ..panel import PanelDataset, VariableRoles


@dataclass(frozen=True)
class DgpSpec:
    """
    Monte-Carlo design.

    Attributes:
        kind (DgpKind): Design
        n (int): Number of units, or of rows with cross_section
        theta (float): Effect parameter (dip and covariate designs)
        p (float): P(X = 1) in the covariate design
        horizon (int): T of the staggered design
        post_periods (int): Post periods 1..H of the dip design
        seed (int): Root seed of the draw
        cross_section (bool): Draw every row as its own unit (dip and covariate designs).
            Rows cycle through the periods, so each period holds about n / periods draws
    """

    kind: DgpKind
    n: int = 1000
    theta: float = 0.0
    p: float = 0.5
    horizon: int = 4
    post_periods: int = 1
    seed: int = DEFAULT_SEED
    cross_section: bool = False

    def __post_init__(self):
        """Validate parameters after initialization."""
        object.__setattr__(self, "kind", DgpKind(self.kind))
        if self.n < 10:
            raise ConfigError(DGP_N_ERROR.format(value=self.n))
        if not 0.0 < self.p < 1.0:
            raise ConfigError(DGP_P_ERROR.format(value=self.p))
        if self.horizon < 1:
            raise ConfigError(DGP_HORIZON_ERROR.format(value=self.horizon))
        if self.post_periods not in (1, 2):
            raise ConfigError(DGP_POST_PERIODS_ERROR.format(value=self.post_periods))
        if self.cross_section and self.kind is DgpKind.STAGGERED:
            raise ConfigError(DGP_CROSS_SECTION_ERROR)

    def generator(self, replicate: int | None = None) -> np.random.Generator:
        """PCG64 generator for the root draw, or for simulation replicate r."""
        seq = np.random.SeedSequence(self.seed) if replicate is None else np.random.SeedSequence(self.seed, spawn_key=(replicate,))
        return np.random.Generator(np.random.PCG64(seq))


def standard_normal(rng: np.random.Generator, size) -> np.ndarray:
    """Standard normal draws as the inverse normal CDF of uniforms clipped into (0, 1)."""
    u = np.clip(rng.random(size), np.finfo(np.float64).tiny, 1.0 - np.finfo(np.float64).epsneg)
    return stats.norm.ppf(u)


def default_roles(kind: DgpKind) -> VariableRoles:
    """Roles of the columns written by the generator of a design."""
    kind = DgpKind(kind)
    if kind is DgpKind.ASHENFELTER_DIP:
        return VariableRoles(
            outcome=SIM_OUTCOME_COLUMN,
            treat=SIM_TREAT_COLUMN,
            post=SIM_POST_COLUMN,
            info=SIM_TIME_COLUMN,
            time=SIM_TIME_COLUMN,
            cluster=SIM_UNIT_COLUMN,
        )
    if kind is DgpKind.COVARIATE_EXAMPLE:
        return VariableRoles(
            outcome=SIM_OUTCOME_COLUMN,
            treat=SIM_TREAT_COLUMN,
            post=SIM_POST_COLUMN,
            info=SIM_COVARIATE_COLUMN,
            time=SIM_TIME_COLUMN,
            cluster=SIM_UNIT_COLUMN,
        )
    return VariableRoles(
        outcome=SIM_OUTCOME_COLUMN,
        time=SIM_TIME_COLUMN,
        cohort=SIM_COHORT_COLUMN,
        cluster=SIM_UNIT_COLUMN,
    )


def _long_frame(n: int, periods: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    # Unit-major layout: all periods of unit 0, then unit 1, ...
    unit = np.repeat(np.arange(n, dtype=np.float64), len(periods))
    time = np.tile(periods, n)
    return unit, time


def _row_layout(spec: DgpSpec, periods: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Unit index and period of every row; cross-section rows are units of their own."""
    if spec.cross_section:
        return np.arange(spec.n), np.resize(periods, spec.n)
    unit, time = _long_frame(spec.n, periods)
    return unit.astype(np.int64), time


def gen_ashenfelter(spec: DgpSpec, rng: np.random.Generator | None = None) -> PanelDataset:
    """
    Pre-treatment dip design.

    Y_it = (1 + |t| + t^2) U_i + theta D_i t 1{t >= 0} + 4 e_it with U, e standard normal
    and D = 1{U >= 1}, observed at t = -2, -1, 0 and post periods 1..H. The information
    set is the time index.

    Args:
        spec: Design (kind ASHENFELTER_DIP)
        rng: Generator; defaults to spec.generator()

    Returns:
        PanelDataset with columns id, t, y, d, post
    """
    rng = rng or spec.generator()
    periods = np.arange(-2.0, spec.post_periods + 1.0)
    unit, time = _row_layout(spec, periods)
    u = standard_normal(rng, spec.n)
    eps = standard_normal(rng, len(time))
    d = (u >= 1.0).astype(np.float64)

    y = (1.0 + np.abs(time) + time**2) * u[unit] + spec.theta * d[unit] * time * (time >= 0) + 4.0 * eps

    frame = pd.DataFrame(
        {
            SIM_UNIT_COLUMN: unit.astype(np.float64),
            SIM_TIME_COLUMN: time,
            SIM_OUTCOME_COLUMN: y,
            SIM_TREAT_COLUMN: d[unit],
            SIM_POST_COLUMN: (time >= 1.0).astype(np.float64),
        }
    )
    return PanelDataset.from_frame(frame, default_roles(DgpKind.ASHENFELTER_DIP))


def gen_covariate_example(spec: DgpSpec, rng: np.random.Generator | None = None) -> PanelDataset:
    """
    Binary covariate design.

    Y_t = (1 + 0.5^t X) U + theta X D t for t in {0, 1}, with U standard normal,
    X ~ Bernoulli(p) independent of U and D = 1{U >= 1}. The information set is X.

    Args:
        spec: Design (kind COVARIATE_EXAMPLE)
        rng: Generator; defaults to spec.generator()

    Returns:
        PanelDataset with columns id, t, y, d, post, x
    """
    rng = rng or spec.generator()
    periods = np.array([0.0, 1.0])
    unit, time = _row_layout(spec, periods)
    u = standard_normal(rng, spec.n)
    x = (rng.random(spec.n) < spec.p).astype(np.float64)
    d = (u >= 1.0).astype(np.float64)

    y = (1.0 + 0.5**time * x[unit]) * u[unit] + spec.theta * (x * d)[unit] * time

    frame = pd.DataFrame(
        {
            SIM_UNIT_COLUMN: unit.astype(np.float64),
            SIM_TIME_COLUMN: time,
            SIM_OUTCOME_COLUMN: y,
            SIM_TREAT_COLUMN: d[unit],
            SIM_POST_COLUMN: time.copy(),
            SIM_COVARIATE_COLUMN: x[unit],
        }
    )
    return PanelDataset.from_frame(frame, default_roles(DgpKind.COVARIATE_EXAMPLE))


def gen_staggered(spec: DgpSpec, rng: np.random.Generator | None = None) -> PanelDataset:
    """
    Staggered adoption design.

    Y_it = (1 + t^2) U_i + e_it + sum_{s=1..T} theta_is D_is 1{s <= t} for t = -T..T,
    with U ~ U[0, 2], e_it ~ N(t^2, 1), theta_is ~ N((1 + s^2) / 2, 1) and
    D_it = 1{U_i >= 2 - t / T}. The cohort is the first period with D = 1, or 0 if never.

    Args:
        spec: Design (kind STAGGERED)
        rng: Generator; defaults to spec.generator()

    Returns:
        PanelDataset with columns id, t, y, g
    """
    rng = rng or spec.generator()
    horizon = spec.horizon
    periods = np.arange(-horizon, horizon + 1.0)
    u = 2.0 * rng.random(spec.n)
    eps = standard_normal(rng, (spec.n, len(periods))) + periods[None, :] ** 2
    s = np.arange(1.0, horizon + 1.0)
    theta = standard_normal(rng, (spec.n, horizon)) + (1.0 + s[None, :] ** 2) / 2.0

    treated = u[:, None] >= 2.0 - s[None, :] / horizon
    # Cumulative effect: sum over s <= t of theta_is D_is
    effect = np.cumsum(theta * treated, axis=1)
    cumulative = np.zeros((spec.n, len(periods)))
    cumulative[:, horizon + 1 :] = effect

    y = (1.0 + periods[None, :] ** 2) * u[:, None] + eps + cumulative
    first = np.where(treated.any(axis=1), np.argmax(treated, axis=1) + 1.0, 0.0)

    unit, time = _long_frame(spec.n, periods)
    frame = pd.DataFrame(
        {
            SIM_UNIT_COLUMN: unit,
            SIM_TIME_COLUMN: time,
            SIM_OUTCOME_COLUMN: y.ravel(),
            SIM_COHORT_COLUMN: np.repeat(first, len(periods)),
        }
    )
    return PanelDataset.from_frame(frame, default_roles(DgpKind.STAGGERED))


GENERATORS = {
    DgpKind.ASHENFELTER_DIP: gen_ashenfelter,
    DgpKind.COVARIATE_EXAMPLE: gen_covariate_example,
    DgpKind.STAGGERED: gen_staggered,
}


def generate(spec: DgpSpec, rng: np.random.Generator | None = None) -> PanelDataset:
    """Draw a dataset from the design named by spec.kind."""
    return GENERATORS[spec.kind](spec, rng)
