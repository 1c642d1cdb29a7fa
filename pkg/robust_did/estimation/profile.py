"""
Selection Bias Profile Module
"""

from collections.abc import Sequence

import numpy as np

from ..models import ProfileEntry, SelectionBiasProfile
from ..panel import PanelDataset, split_cells
from .means import estimate_difference


def selection_bias_profile(
    ds: PanelDataset,
    covariates: Sequence[str] | None = None,
    levels: Sequence[float] | None = None,
) -> SelectionBiasProfile:
    """
    Estimate the selection bias at every pre-period information level.

    Each level's selection bias is the treated-minus-control difference in means among
    its pre-period rows (doubly robust when covariates are given); its weight is the
    level's share of pre-period rows.

    Args:
        ds: Dataset with treat, post and info roles
        covariates: Covariate columns; defaults to the covariate role
        levels: Information levels to keep; bootstrap replicates pass the original levels

    Returns:
        SelectionBiasProfile sorted by level

    Raises:
        DegenerateCellError: If a level lacks treated or control rows
    """
    names = ds.roles.covariates if covariates is None else tuple(covariates)
    cells = split_cells(ds, pre_only=True, levels=levels)
    total = sum(cell.size for cell in cells)

    entries = []
    for cell in cells:
        rows = np.concatenate([cell.treated_rows, cell.control_rows])
        x = np.column_stack([ds.columns[name][rows] for name in names]) if names else None
        sb = estimate_difference(ds.outcome[rows], ds.treat[rows], x)
        entries.append(ProfileEntry(level=cell.info_level, sb=sb.value, weight=cell.size / total))
    return SelectionBiasProfile(tuple(entries))
