"""
Coverage Study Module

Repeats draw-estimate-interval cycles and summarizes coverage (CP_inf) and average
interval length against the analytic identified sets.

CP_inf is whole-set containment for the bounds-type intervals (types 1 and 3) and, for
the ATT interval (type 2), the smaller of the two endpoint coverage shares.
"""

import json
import logging
from collections import defaultdict
from dataclasses import asdict, dataclass, replace
from pathlib import Path

import numpy as np
import pandas as pd
from joblib import Parallel, delayed

from ..config import BootstrapPlan
from ..constants import EXPORT_WRITE_ERROR, SIMS_ERROR
from ..core import RobustDID
from ..enums import CiType, DgpKind, RdidType
from ..exceptions import ConfigError, ReportError, RobustDIDError
from ..staggered import staggered_table
from .dgp import DgpSpec, generate
from .truths import IdentifiedSet, TruthSet, analytic_truths


logger = logging.getLogger(__name__)

# (ci_type, g, t); g and t are None outside the staggered design
CellKey = tuple[int, float | None, float | None]


@dataclass(frozen=True)
class CoverageRow:
    """
    Coverage summary of one interval type (and one (g, t) cell for the staggered design).

    Attributes:
        dgp (str): Design name
        n (int): Units per draw
        ci_type (int): Interval construction (1, 2 or 3)
        g (float | None): Cohort
        t (float | None): Period
        cp_inf (float): Coverage over successful simulations
        avg_length (float): Mean interval length over successful simulations
        sims (int): Successful simulations
        failures (int): Failed simulations
    """

    dgp: str
    n: int
    ci_type: int
    g: float | None
    t: float | None
    cp_inf: float
    avg_length: float
    sims: int
    failures: int


@dataclass(frozen=True)
class SimulationReport:
    """
    Coverage study output.

    Attributes:
        spec (DgpSpec): Design
        rows (tuple[CoverageRow, ...]): One row per interval type (and cell)
        sims (int): Simulations attempted
        failures (int): Simulations that failed entirely
    """

    spec: DgpSpec
    rows: tuple[CoverageRow, ...]
    sims: int
    failures: int

    def row(self, ci_type: int, g: float | None = None, t: float | None = None) -> CoverageRow:
        """Look up a row by interval type and cell."""
        for row in self.rows:
            if row.ci_type == ci_type and row.g == g and row.t == t:
                return row
        raise KeyError((ci_type, g, t))

    def to_frame(self) -> pd.DataFrame:
        """One record per row, keyed by (dgp, n, ci_type, g, t)."""
        return pd.DataFrame([asdict(row) for row in self.rows])

    def to_payload(self) -> dict:
        from .. import __version__

        return {
            "spec": {**asdict(self.spec), "kind": self.spec.kind.value},
            "sims": self.sims,
            "failures": self.failures,
            "rows": [asdict(row) for row in self.rows],
            "version": __version__,
        }

    def to_csv(self, path: str | Path) -> None:
        try:
            self.to_frame().to_csv(path, index=False)
        except OSError as e:
            raise ReportError(EXPORT_WRITE_ERROR.format(path=path, error=e)) from e

    def to_json(self, path: str | Path) -> None:
        try:
            Path(path).write_text(json.dumps(self.to_payload(), indent=2), encoding="utf-8")
        except OSError as e:
            raise ReportError(EXPORT_WRITE_ERROR.format(path=path, error=e)) from e


def simulation_seed(seed: int, replicate: int) -> int:
    """Bootstrap seed of simulation r, drawn from entropy [seed, r] so it never reuses a data substream."""
    return int(np.random.SeedSequence([seed, replicate]).generate_state(1, dtype=np.uint64)[0])


def _one_simulation(spec: DgpSpec, plan: BootstrapPlan, truths: TruthSet, replicate: int) -> dict[CellKey, tuple[float, float]] | None:
    """Intervals of one simulated draw, or None when the draw failed."""
    inner = replace(plan, seed=simulation_seed(plan.seed, replicate), n_jobs=1)
    try:
        ds = generate(spec, spec.generator(replicate))
        if spec.kind is DgpKind.STAGGERED:
            table = staggered_table(ds, inner)
            return {
                (CiType.BOUNDS_YE.value, cell.g, cell.t): (cell.ci.lower, cell.ci.upper)
                for cell in table.cells
                if cell.ok and (cell.g, cell.t) in truths.cells
            }
        if spec.kind is DgpKind.ASHENFELTER_DIP and spec.post_periods > 1:
            # Single-run truths refer to the first post period
            ds = ds.subset(ds.time <= 1.0)
        result = RobustDID(ds, RdidType.BOUNDS, plan=inner).estimate()
    except RobustDIDError as e:
        logger.debug("Simulation %d failed: %s", replicate, e)
        return None
    return {(ci_type.value, None, None): (ci.lower, ci.upper) for ci_type, ci in result.intervals.items()}


def _summarize(intervals: np.ndarray, truth: IdentifiedSet, ci_type: int) -> tuple[float, float]:
    lower, upper = intervals[:, 0], intervals[:, 1]
    covers_lower = (lower <= truth.lower) & (truth.lower <= upper)
    covers_upper = (lower <= truth.upper) & (truth.upper <= upper)
    if ci_type == CiType.ATT_YE.value:
        cp = min(float(covers_lower.mean()), float(covers_upper.mean()))
    else:
        cp = float((covers_lower & covers_upper).mean())
    return cp, float(np.mean(upper - lower))


def run_coverage_study(spec: DgpSpec, sims: int, plan: BootstrapPlan | None = None) -> SimulationReport:
    """
    Run a coverage study.

    Simulation r draws data from substream (spec.seed, r) and bootstraps with
    simulation_seed(plan.seed, r), so the report depends only on (spec, sims, plan). plan.n_jobs
    spreads simulations over workers; each simulation bootstraps serially.

    Args:
        spec: Design
        sims: Number of simulations
        plan: Bootstrap settings

    Returns:
        SimulationReport; failed simulations are counted, never fatal
    """
    if sims < 1:
        raise ConfigError(SIMS_ERROR.format(value=sims))
    plan = plan or BootstrapPlan()
    truths = analytic_truths(spec)

    if plan.n_jobs == 1:
        outcomes = [_one_simulation(spec, plan, truths, r) for r in range(sims)]
    else:
        outcomes = Parallel(n_jobs=plan.n_jobs)(delayed(_one_simulation)(spec, plan, truths, r) for r in range(sims))

    collected: dict[CellKey, list[tuple[float, float]]] = defaultdict(list)
    failures = 0
    for outcome in outcomes:
        if outcome is None:
            failures += 1
            continue
        for key, interval in outcome.items():
            collected[key].append(interval)

    if spec.kind is DgpKind.STAGGERED:
        keys = [(CiType.BOUNDS_YE.value, g, t) for g, t in sorted(truths.cells)]
    else:
        keys = [(ci_type.value, None, None) for ci_type in (CiType.BOUNDS_YE, CiType.ATT_YE, CiType.UNION)]

    rows = []
    for ci_type, g, t in keys:
        truth = truths.cells[(g, t)] if g is not None else truths.primary
        intervals = np.array(collected.get((ci_type, g, t), []), dtype=np.float64).reshape(-1, 2)
        successful = intervals.shape[0]
        cp, length = _summarize(intervals, truth, ci_type) if successful else (float("nan"), float("nan"))
        rows.append(
            CoverageRow(
                dgp=spec.kind.value,
                n=spec.n,
                ci_type=ci_type,
                g=g,
                t=t,
                cp_inf=cp,
                avg_length=length,
                sims=successful,
                failures=sims - successful,
            )
        )

    if failures:
        logger.info("Coverage study: %d of %d simulations failed", failures, sims)
    return SimulationReport(spec=spec, rows=tuple(rows), sims=sims, failures=failures)
