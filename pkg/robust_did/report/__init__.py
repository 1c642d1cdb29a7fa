"""
Report Package

Results tables, JSON/CSV export and SVG figures for the command-line surface.
"""

from .figure import FigureSeries, cohort_series, dynamic_series, emit_figure, profile_series
from .payload import build_payload, read_json, write_csv, write_json
from .table import (
    ResultsTable,
    TableRow,
    dynamic_results_table,
    rdid_results_table,
    simulation_results_table,
    staggered_results_table,
    truth_results_table,
)


__all__ = [
    # Tables
    "ResultsTable",
    "TableRow",
    "rdid_results_table",
    "dynamic_results_table",
    "staggered_results_table",
    "simulation_results_table",
    "truth_results_table",
    # Payloads
    "build_payload",
    "read_json",
    "write_csv",
    "write_json",
    # Figures
    "FigureSeries",
    "emit_figure",
    "profile_series",
    "dynamic_series",
    "cohort_series",
]
