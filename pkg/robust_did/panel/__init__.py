"""
Robust-DID Panel Module

Variable roles, validated long-format datasets and information-level cells.
"""

from .dataset import Cell, PanelDataset, load_panel, split_cells
from .roles import SCALAR_ROLES, VariableRoles


__all__ = [
    # Roles
    "VariableRoles",
    "SCALAR_ROLES",
    # Datasets
    "PanelDataset",
    "Cell",
    "load_panel",
    "split_cells",
]
