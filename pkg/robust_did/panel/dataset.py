"""
Panel Dataset Module

Ingests long-format panel data from CSV, validates it against the variable roles and slices it into
the treated/control cells the estimators consume.
"""

import logging
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from os import PathLike
from typing import IO

import numpy as np
import pandas as pd

from ..constants import (
    CSV_PARSE_ERROR,
    DEGENERATE_CELL_ERROR,
    EMPTY_AFTER_FILTER_ERROR,
    INFO_ROLE_REQUIRED_ERROR,
    LOG_ROWS_DROPPED,
    MISSING_COLUMN_ERROR,
    MISSING_VALUE_ERROR,
    NO_PRE_ROWS_ERROR,
    NON_BINARY_ERROR,
    NON_NUMERIC_ERROR,
    POST_ROLE_REQUIRED_ERROR,
    ROLE_NOT_ASSIGNED_ERROR,
)
from ..exceptions import (
    DegenerateCellError,
    EmptyAfterFilterError,
    MissingColumnError,
    MissingValueError,
    NonBinaryError,
    NonNumericError,
    PanelDataError,
    RoleError,
)
from ..utils import format_level
from .roles import VariableRoles


logger = logging.getLogger(__name__)

CsvSource = str | PathLike | IO[bytes] | IO[str]


def _read_only(values: np.ndarray) -> np.ndarray:
    values.flags.writeable = False
    return values


@dataclass(frozen=True)
class PanelDataset:
    """
    Validated long-format observations keyed by variable roles.

    Columns are stored as read-only float64 arrays, so a dataset can be shared
    freely between threads and bootstrap workers.

    Attributes:
        roles (VariableRoles): Role assignment
        columns (Mapping[str, np.ndarray]): Column name to values
        n_dropped (int): Rows removed by listwise deletion during ingestion
    """

    roles: VariableRoles
    columns: Mapping[str, np.ndarray]
    n_dropped: int = 0
    _cluster_codes: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        for values in self.columns.values():
            _read_only(values)
        if self.roles.cluster:
            _, codes = np.unique(self.columns[self.roles.cluster], return_inverse=True)
        else:
            # Each row is its own cluster
            codes = np.arange(self.n_obs)
        object.__setattr__(self, "_cluster_codes", _read_only(codes.astype(np.int64)))

    # ------------------------------------------------------------------
    # Construction
    # ------------------------------------------------------------------

    @classmethod
    def from_frame(cls, frame: pd.DataFrame, roles: VariableRoles, drop_missing: bool = False) -> "PanelDataset":
        """
        Validate an in-memory data frame and build a dataset from its role columns.

        Args:
            frame: Long-format data, one row per observation
            roles: Role assignment
            drop_missing: Delete rows with missing role values instead of rejecting them

        Returns:
            Validated PanelDataset

        Raises:
            MissingColumnError: If a role column is absent
            NonNumericError: If a role value is not a finite number
            MissingValueError: If a role value is blank and drop_missing is off
            NonBinaryError: If treat or post holds values outside {0, 1}
            EmptyAfterFilterError: If no row survives
        """
        names = roles.columns()
        for name in names:
            if name not in frame.columns:
                raise MissingColumnError(MISSING_COLUMN_ERROR.format(column=name), column=name)

        raw = frame[names].reset_index(drop=True)
        missing = raw.isna()
        numeric: dict[str, pd.Series] = {}

        # Non-numeric values are rejected regardless of drop_missing
        for name in names:
            series = raw[name]
            values = series if pd.api.types.is_numeric_dtype(series) and not pd.api.types.is_bool_dtype(series) else pd.to_numeric(series, errors="coerce")
            values = values.astype(np.float64)
            bad = (values.isna() & ~missing[name]) | np.isinf(values)
            if bad.any():
                row = int(np.flatnonzero(bad.to_numpy())[0]) + 1
                raise NonNumericError(NON_NUMERIC_ERROR.format(column=name, row=row), column=name, row=row)
            numeric[name] = values

        any_missing = missing.any(axis=1).to_numpy()
        n_dropped = 0
        if any_missing.any():
            if not drop_missing:
                row_index = int(np.flatnonzero(any_missing)[0])
                column = next(name for name in names if missing.at[row_index, name])
                raise MissingValueError(MISSING_VALUE_ERROR.format(column=column, row=row_index + 1), column=column, row=row_index + 1)
            n_dropped = int(any_missing.sum())
            logger.info(LOG_ROWS_DROPPED, n_dropped)

        keep = ~any_missing
        if not keep.any():
            raise EmptyAfterFilterError(EMPTY_AFTER_FILTER_ERROR)

        columns = {name: numeric[name].to_numpy()[keep].copy() for name in names}

        for name in (roles.treat, roles.post):
            if name and not np.isin(columns[name], (0.0, 1.0)).all():
                raise NonBinaryError(NON_BINARY_ERROR.format(column=name), column=name)

        return cls(roles=roles, columns=columns, n_dropped=n_dropped)

    # ------------------------------------------------------------------
    # Accessors
    # ------------------------------------------------------------------

    @property
    def n_obs(self) -> int:
        return len(self.columns[self.roles.outcome])

    @property
    def outcome(self) -> np.ndarray:
        return self.columns[self.roles.outcome]

    @property
    def treat(self) -> np.ndarray:
        return self._role("treat")

    @property
    def post(self) -> np.ndarray:
        return self._role("post")

    @property
    def info(self) -> np.ndarray:
        return self._role("info")

    @property
    def time(self) -> np.ndarray:
        return self._role("time")

    @property
    def cohort(self) -> np.ndarray:
        return self._role("cohort")

    @property
    def cluster_codes(self) -> np.ndarray:
        """Per-row cluster code in 0..n_clusters-1."""
        return self._cluster_codes

    def _role(self, role: str) -> np.ndarray:
        name = getattr(self.roles, role)
        if not name:
            raise RoleError(ROLE_NOT_ASSIGNED_ERROR.format(role=role))
        return self.columns[name]

    # ------------------------------------------------------------------
    # Derived datasets
    # ------------------------------------------------------------------

    def take(self, indices: np.ndarray) -> "PanelDataset":
        """
        Build a dataset from the given row positions (repeats allowed).

        Args:
            indices: Row positions

        Returns:
            New PanelDataset sharing roles with this one
        """
        return PanelDataset(roles=self.roles, columns={name: values[indices] for name, values in self.columns.items()})

    def subset(self, mask: np.ndarray) -> "PanelDataset":
        """Keep the rows where mask is true."""
        return self.take(np.flatnonzero(mask))

    def with_roles(self, roles: VariableRoles) -> "PanelDataset":
        """Reinterpret the same columns under other roles; the new role columns must already exist."""
        for name in roles.columns():
            if name not in self.columns:
                raise MissingColumnError(MISSING_COLUMN_ERROR.format(column=name), column=name)
        return PanelDataset(roles=roles, columns=self.columns, n_dropped=self.n_dropped)

    def pre_rows(self) -> np.ndarray:
        """Positions of pre-period rows (post = 0)."""
        if not self.roles.post:
            raise RoleError(POST_ROLE_REQUIRED_ERROR)
        return np.flatnonzero(self.post == 0)

    def post_rows(self) -> np.ndarray:
        """Positions of post-period rows (post = 1)."""
        if not self.roles.post:
            raise RoleError(POST_ROLE_REQUIRED_ERROR)
        return np.flatnonzero(self.post == 1)

    def to_frame(self) -> pd.DataFrame:
        """Export the role columns as a data frame, in role display order."""
        return pd.DataFrame({name: np.asarray(self.columns[name]) for name in self.roles.columns()})


@dataclass(frozen=True)
class Cell:
    """
    Treated and control rows sharing one information level.

    Attributes:
        info_level (float): Information level
        treated_rows (np.ndarray): Positions of treated rows
        control_rows (np.ndarray): Positions of control rows
    """

    info_level: float
    treated_rows: np.ndarray
    control_rows: np.ndarray

    @property
    def size(self) -> int:
        return len(self.treated_rows) + len(self.control_rows)


def load_panel(source: CsvSource, roles: VariableRoles, drop_missing: bool = False) -> PanelDataset:
    """
    Read a CSV file with a header row and validate it against the roles.

    Empty fields are missing values. Floats are parsed with round-trip precision
    so that exported datasets re-read bit-identically.

    Args:
        source: Path or binary/text stream of UTF-8 CSV
        roles: Role assignment
        drop_missing: Delete rows with missing role values instead of rejecting them

    Returns:
        Validated PanelDataset (``n_dropped`` reports deleted rows)

    Raises:
        MissingColumnError, NonBinaryError, NonNumericError, MissingValueError, EmptyAfterFilterError
    """
    try:
        frame = pd.read_csv(
            source,
            encoding="utf-8",
            keep_default_na=False,
            na_values=[""],
            float_precision="round_trip",
        )
    except (pd.errors.ParserError, pd.errors.EmptyDataError, UnicodeDecodeError) as e:
        raise PanelDataError(CSV_PARSE_ERROR.format(error=e)) from e
    frame.columns = [str(column).strip() for column in frame.columns]
    return PanelDataset.from_frame(frame, roles, drop_missing=drop_missing)


def split_cells(ds: PanelDataset, pre_only: bool = True, levels: Sequence[float] | None = None) -> list[Cell]:
    """
    Split rows into one cell per information level.

    Args:
        ds: Dataset with treat and info roles
        pre_only: Restrict to pre-period rows (post = 0)
        levels: Optional subset of levels to return; each must be non-degenerate

    Returns:
        Cells sorted by level

    Raises:
        RoleError: If the info role (or, with pre_only, the post role) is missing
        EmptyAfterFilterError: If there are no candidate rows
        DegenerateCellError: If a cell lacks treated or control rows
    """
    if not ds.roles.info:
        raise RoleError(INFO_ROLE_REQUIRED_ERROR)

    rows = ds.pre_rows() if pre_only else np.arange(ds.n_obs)
    if rows.size == 0:
        raise EmptyAfterFilterError(NO_PRE_ROWS_ERROR)

    info = ds.info[rows]
    treated = ds.treat[rows] == 1.0
    wanted = np.unique(info) if levels is None else np.unique(np.asarray(levels, dtype=np.float64))

    cells = []
    for level in wanted:
        in_cell = info == level
        treated_rows = rows[in_cell & treated]
        control_rows = rows[in_cell & ~treated]
        if treated_rows.size == 0 or control_rows.size == 0:
            raise DegenerateCellError(DEGENERATE_CELL_ERROR.format(level=format_level(level)), level=float(level))
        cells.append(Cell(info_level=float(level), treated_rows=treated_rows, control_rows=control_rows))
    return cells
