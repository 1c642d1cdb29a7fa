"""
Shared fixtures: a hand-made four-unit panel, bootstrap plans and simulated panels.
"""

import numpy as np
import pandas as pd
import pytest

from robust_did import BootstrapPlan, DgpKind, PanelDataset, VariableRoles
from robust_did.simulation import DgpSpec, generate


# Two treated units (1, 2) and two controls (3, 4) observed at t = -1, 0 (pre) and 1 (post).
# Selection biases: 2 at t = -1 and 3 at t = 0; post-period difference in means: 6.
TOY_OUTCOMES = {
    1: (2.0, 5.0, 10.0),
    2: (4.0, 7.0, 12.0),
    3: (1.0, 2.0, 4.0),
    4: (1.0, 4.0, 6.0),
}


def toy_records() -> list[dict[str, float]]:
    records = []
    for unit, outcomes in TOY_OUTCOMES.items():
        for t, y in zip((-1.0, 0.0, 1.0), outcomes, strict=True):
            records.append({"id": float(unit), "t": t, "y": y, "d": float(unit <= 2), "post": float(t == 1.0)})
    return records


@pytest.fixture
def toy_frame() -> pd.DataFrame:
    return pd.DataFrame(toy_records())


@pytest.fixture
def toy_roles() -> VariableRoles:
    return VariableRoles(outcome="y", treat="d", post="post", info="t", cluster="id")


@pytest.fixture
def toy_panel(toy_frame, toy_roles) -> PanelDataset:
    return PanelDataset.from_frame(toy_frame, toy_roles)


@pytest.fixture
def small_plan() -> BootstrapPlan:
    return BootstrapPlan(replicates=60, seed=7, level=95.0, n_jobs=1)


@pytest.fixture(scope="session")
def dip_panel() -> PanelDataset:
    """Pre-treatment dip draw, 400 units, theta = 1."""
    return generate(DgpSpec(DgpKind.ASHENFELTER_DIP, n=400, theta=1.0, seed=11))


@pytest.fixture(scope="session")
def dip_large() -> PanelDataset:
    """Pre-treatment dip draw large enough for the analytic checks, theta = -1."""
    return generate(DgpSpec(DgpKind.ASHENFELTER_DIP, n=200_000, theta=-1.0, seed=2024))


@pytest.fixture(scope="session")
def staggered_panel() -> PanelDataset:
    """Staggered adoption draw with cohorts 1..3 and a never-treated cohort."""
    return generate(DgpSpec(DgpKind.STAGGERED, n=600, horizon=3, seed=5))


def random_small_panel(rng: np.random.Generator) -> tuple[pd.DataFrame, VariableRoles]:
    """
    At most 20 rows: 1-3 pre-period levels and one post period, each cell holding at least
    one treated and one control row.
    """
    n_levels = int(rng.integers(1, 4))
    levels = np.sort(rng.choice(np.arange(-6.0, 0.0), size=n_levels, replace=False))
    records = []
    for t, post in [(level, 0.0) for level in levels] + [(1.0, 1.0)]:
        n_treated = int(rng.integers(1, 3))
        n_control = int(rng.integers(1, 3))
        for d in [1.0] * n_treated + [0.0] * n_control:
            records.append({"y": float(rng.uniform(-10.0, 10.0)), "d": d, "post": post, "t": float(t)})
    return pd.DataFrame(records), VariableRoles(outcome="y", treat="d", post="post", info="t")
