"""
Cluster Bootstrap Module

Resamples clusters with replacement and re-evaluates a statistic on every replicate.
Replicate r draws from the random substream (seed, r), so results do not depend on
how replicates are scheduled across workers.
"""

import logging
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np
from joblib import Parallel, delayed

from ..config import BootstrapPlan
from ..constants import (
    DRAWS_SHAPE_ERROR,
    LOG_BOOTSTRAP_FAILURES,
    MAX_BOOTSTRAP_FAILURE_SHARE,
    MISSING_COLUMN_ERROR,
    TOO_MANY_FAILURES_ERROR,
)
from ..exceptions import (
    DegenerateCellError,
    InferenceError,
    IrlsDivergedError,
    MissingColumnError,
    PropensityDegenerateError,
    TooManyFailuresError,
)
from ..panel import PanelDataset


logger = logging.getLogger(__name__)

# Failures that make a single replicate unusable without invalidating the run
REPLICATE_FAILURES = (DegenerateCellError, IrlsDivergedError, PropensityDegenerateError)

Statistic = Callable[[PanelDataset], np.ndarray]


@dataclass(frozen=True)
class BootstrapDraws:
    """
    Statistic vectors of the successful replicates, in replicate order.

    Attributes:
        draws (np.ndarray): (successful replicates, statistic length) array
        failures (int): Replicates skipped because the resample was degenerate
        replicates (int): Replicates attempted
    """

    draws: np.ndarray
    failures: int
    replicates: int

    @property
    def successful(self) -> int:
        return self.draws.shape[0]

    def column(self, index: int) -> np.ndarray:
        """Draws of one statistic component."""
        return self.draws[:, index]

    def sd(self) -> np.ndarray:
        """Per-component standard deviation (ddof=1, draws not recentered)."""
        return np.std(self.draws, axis=0, ddof=1)


def replicate_generator(seed: int, replicate: int) -> np.random.Generator:
    """Independent PCG64 generator for one (seed, replicate) pair."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(replicate,))))


class ClusterSampler:
    """
    Draws cluster resamples of a dataset as row positions.

    Rows are grouped by cluster once; each resample concatenates the rows of the drawn
    clusters, so a cluster drawn twice contributes its rows twice.
    """

    def __init__(self, codes: np.ndarray):
        self.order = np.argsort(codes, kind="stable")
        self.counts = np.bincount(codes)
        self.starts = np.concatenate([[0], np.cumsum(self.counts)[:-1]])
        self.n_clusters = len(self.counts)

    def rows(self, rng: np.random.Generator) -> np.ndarray:
        drawn = rng.integers(0, self.n_clusters, size=self.n_clusters)
        lengths = self.counts[drawn]
        ends = np.cumsum(lengths)
        offsets = np.repeat(self.starts[drawn] - (ends - lengths), lengths) + np.arange(ends[-1] if len(ends) else 0)
        return self.order[offsets]


def _cluster_codes(ds: PanelDataset, cluster: str | None) -> np.ndarray:
    if cluster is None or cluster == ds.roles.cluster:
        return ds.cluster_codes
    if cluster not in ds.columns:
        raise MissingColumnError(MISSING_COLUMN_ERROR.format(column=cluster), column=cluster)
    _, codes = np.unique(ds.columns[cluster], return_inverse=True)
    return codes


def _run_replicate(ds: PanelDataset, sampler: ClusterSampler, statistic: Statistic, seed: int, replicate: int) -> np.ndarray | None:
    rows = sampler.rows(replicate_generator(seed, replicate))
    try:
        return np.atleast_1d(np.asarray(statistic(ds.take(rows)), dtype=np.float64))
    except REPLICATE_FAILURES as e:
        logger.debug("Replicate %d skipped: %s", replicate, e)
        return None


def cluster_bootstrap(ds: PanelDataset, plan: BootstrapPlan, statistic: Statistic) -> BootstrapDraws:
    """
    Run the cluster bootstrap.

    Args:
        ds: Dataset to resample
        plan: Replicates, seed, cluster column and worker count
        statistic: Function mapping a resampled dataset to a statistic vector

    Returns:
        BootstrapDraws of the successful replicates

    Raises:
        TooManyFailuresError: If more than 20% of the replicates raise one of REPLICATE_FAILURES
    """
    sampler = ClusterSampler(_cluster_codes(ds, plan.cluster))

    if plan.n_jobs == 1:
        results = [_run_replicate(ds, sampler, statistic, plan.seed, r) for r in range(plan.replicates)]
    else:
        results = Parallel(n_jobs=plan.n_jobs)(delayed(_run_replicate)(ds, sampler, statistic, plan.seed, r) for r in range(plan.replicates))

    successful = [draw for draw in results if draw is not None]
    failures = plan.replicates - len(successful)
    if failures > MAX_BOOTSTRAP_FAILURE_SHARE * plan.replicates:
        raise TooManyFailuresError(
            TOO_MANY_FAILURES_ERROR.format(failures=failures, replicates=plan.replicates, share=MAX_BOOTSTRAP_FAILURE_SHARE),
            failures=failures,
            replicates=plan.replicates,
        )
    if failures:
        logger.info(LOG_BOOTSTRAP_FAILURES, failures, plan.replicates)

    return BootstrapDraws(draws=np.vstack(successful), failures=failures, replicates=plan.replicates)


def check_draws(draws: np.ndarray, ndim: int) -> np.ndarray:
    """Validate the shape of a draws array before building an interval."""
    draws = np.asarray(draws, dtype=np.float64)
    if draws.ndim != ndim or draws.shape[0] == 0:
        raise InferenceError(DRAWS_SHAPE_ERROR.format(expected=f"{ndim}-D"))
    return draws
