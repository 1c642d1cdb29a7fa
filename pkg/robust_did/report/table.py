"""
Results Tables

Fixed-width tables in the layout of the command logs. Every displayed number is tied to
its stored-result key, so a table can be rebuilt from a JSON payload alone.
"""

from dataclasses import dataclass, field

import pandas as pd

from ..constants import (
    KEY_CI_LB,
    KEY_CI_LB_TEMPLATE,
    KEY_CI_UB,
    KEY_CI_UB_TEMPLATE,
    KEY_DY_CI_LB_TEMPLATE,
    KEY_DY_CI_UB_TEMPLATE,
    KEY_DY_LB_TEMPLATE,
    KEY_DY_PE_TEMPLATE,
    KEY_DY_UB_TEMPLATE,
    KEY_PO_CI_LB_TEMPLATE,
    KEY_PO_CI_UB_TEMPLATE,
    KEY_PO_PE_TEMPLATE,
    KEY_PROJ_PE,
    KEY_RDID_LB,
    KEY_RDID_UB,
    KEY_SB_HAT,
    KEY_SIM_CP_TEMPLATE,
    KEY_SIM_LENGTH_TEMPLATE,
    KEY_SIM_STAG_CP_TEMPLATE,
    KEY_SIM_STAG_LENGTH_TEMPLATE,
    KEY_STAG_CI_LB_TEMPLATE,
    KEY_STAG_CI_UB_TEMPLATE,
    KEY_STAG_LB_TEMPLATE,
    KEY_STAG_UB_TEMPLATE,
    KEY_TRUTH_ATT_TEMPLATE,
    KEY_TRUTH_LB_TEMPLATE,
    KEY_TRUTH_UB_TEMPLATE,
    LABEL_CI_ROW_TEMPLATE,
    LABEL_OUTCOME_TEMPLATE,
    LABEL_SIM_TITLE_TEMPLATE,
    LABEL_STAG_ROW_TEMPLATE,
    LABEL_STAG_TITLE,
    LABEL_TIME_TEMPLATE,
    LABEL_TRUTH_TITLE,
    NOTE_CI_BY_TYPE,
    NOTE_DY_CI_BY_TYPE,
    NOTE_DY_ERROR_TEMPLATE,
    NOTE_DY_LINEAR,
    NOTE_DY_PO_TEMPLATE,
    NOTE_LINEAR_TEMPLATE,
    NOTE_PO,
    NOTE_RDID_POINT,
    NOTE_SIM_TEMPLATE,
    NOTE_STAG_ERROR_TEMPLATE,
    NOTE_STAG_GROUPS_TEMPLATE,
    NOTE_STAG_INFO_TEMPLATE,
    NOTE_STAG_POST_TEMPLATE,
    NOTE_TRUTH_TEMPLATE,
    PAYLOAD_FIELD_ERROR,
    TABLE_COLUMN_WIDTH,
    TABLE_DECIMALS,
    TABLE_LABEL_WIDTH,
    TABLE_MISSING_VALUE,
)
from ..core import LOSS_ORDER, RdidResult
from ..dynamics import DynamicResult
from ..enums import DgpKind, EstimandKind, RdidType
from ..exceptions import ReportError
from ..simulation import SimulationReport, TruthSet
from ..staggered import StaggeredResult
from ..utils import format_level, format_levels


@dataclass(frozen=True)
class TableRow:
    """
    One labelled row; keys[i] is the stored-result key of column i (None for a blank cell).
    """

    label: str
    keys: tuple[str | None, ...]


@dataclass(frozen=True)
class ResultsTable:
    """
    Rendered results of one command.

    Attributes:
        title (str): Header of the label column
        columns (tuple[str, ...]): Numeric column headers
        rows (tuple[TableRow, ...]): Labelled rows
        results (dict[str, float]): Stored-result scalars backing the cells
        notes (tuple[str, ...]): Footnotes printed under the table
    """

    title: str
    columns: tuple[str, ...]
    rows: tuple[TableRow, ...]
    results: dict[str, float] = field(default_factory=dict)
    notes: tuple[str, ...] = ()

    def value(self, row: TableRow, index: int) -> float | None:
        key = row.keys[index]
        return None if key is None else self.results.get(key)

    def render(self) -> str:
        """Fixed-width text with 4-decimal numbers; missing cells print as '.'."""
        label_width = TABLE_LABEL_WIDTH - 1
        separator = "-" * TABLE_LABEL_WIDTH + "+" + "-" * (TABLE_COLUMN_WIDTH * len(self.columns))
        header = f"{self.title:>{label_width}} |" + "".join(f"{name:>{TABLE_COLUMN_WIDTH}}" for name in self.columns)

        lines = [separator, header, separator]
        for row in self.rows:
            cells = []
            for index in range(len(self.columns)):
                value = self.value(row, index)
                if value is None:
                    cells.append(f"{TABLE_MISSING_VALUE:>{TABLE_COLUMN_WIDTH}}")
                else:
                    cells.append(f"{value:>{TABLE_COLUMN_WIDTH}.{TABLE_DECIMALS}f}")
            lines.append(f"{row.label:>{label_width}} |" + "".join(cells))
        lines.append(separator)
        lines.extend(self.notes)
        return "\n".join(lines) + "\n"

    def to_payload(self) -> dict:
        """Layout only; values live in the payload's results object."""
        return {
            "title": self.title,
            "columns": list(self.columns),
            "rows": [{"label": row.label, "keys": list(row.keys)} for row in self.rows],
            "notes": list(self.notes),
        }

    @classmethod
    def from_payload(cls, payload: dict) -> "ResultsTable":
        """
        Rebuild a table from a command payload ({"table": ..., "results": ...}).

        Raises:
            ReportError: If a required field is missing
        """
        for name in ("table", "results"):
            if name not in payload:
                raise ReportError(PAYLOAD_FIELD_ERROR.format(field=name))
        layout = payload["table"]
        try:
            return cls(
                title=layout["title"],
                columns=tuple(layout["columns"]),
                rows=tuple(TableRow(label=row["label"], keys=tuple(row["keys"])) for row in layout["rows"]),
                results={key: float(value) for key, value in payload["results"].items()},
                notes=tuple(layout.get("notes", ())),
            )
        except KeyError as e:
            raise ReportError(PAYLOAD_FIELD_ERROR.format(field=e.args[0])) from e

    def to_frame(self) -> pd.DataFrame:
        """One record per table row: the label, then one column per header."""
        records = []
        for row in self.rows:
            record: dict[str, object] = {"label": row.label}
            for index, name in enumerate(self.columns):
                record[name] = self.value(row, index)
            records.append(record)
        return pd.DataFrame(records, columns=["label", *self.columns])


def rdid_results_table(result: RdidResult, outcome: str) -> ResultsTable:
    """
    Table of an rdid run.

    BOUNDS: rows RDID and CI_1..CI_3 with columns LB, UB. POLICY: rows L1, L2, Linf with
    columns PE, CI_LB, CI_UB. LINEAR: one row named after the outcome with columns PE,
    CI_LB, CI_UB, the estimand (OLS or TAU_DR) and SB_hat.
    """
    title = LABEL_OUTCOME_TEMPLATE.format(outcome=outcome)
    results = result.stored_results()

    if result.rdidtype is RdidType.BOUNDS:
        rows = [TableRow("RDID", (KEY_RDID_LB, KEY_RDID_UB))]
        for ci_type in result.intervals:
            index = ci_type.value
            rows.append(
                TableRow(
                    LABEL_CI_ROW_TEMPLATE.format(index=index),
                    (KEY_CI_LB_TEMPLATE.format(index=index), KEY_CI_UB_TEMPLATE.format(index=index)),
                )
            )
        notes = (NOTE_RDID_POINT, *(NOTE_CI_BY_TYPE[ci_type.value] for ci_type in result.intervals))
        return ResultsTable(title=title, columns=("LB", "UB"), rows=tuple(rows), results=results, notes=notes)

    if result.rdidtype is RdidType.POLICY:
        rows = [
            TableRow(
                loss.label,
                (
                    KEY_PO_PE_TEMPLATE.format(loss=loss.label),
                    KEY_PO_CI_LB_TEMPLATE.format(loss=loss.label),
                    KEY_PO_CI_UB_TEMPLATE.format(loss=loss.label),
                ),
            )
            for loss in LOSS_ORDER
        ]
        return ResultsTable(title=title, columns=("PE", "CI_LB", "CI_UB"), rows=tuple(rows), results=results, notes=(NOTE_PO,))

    kind = result.estimand.kind
    estimand_column = "OLS" if kind is EstimandKind.SIMPLE_DIM else "TAU_DR"
    row = TableRow(outcome, (KEY_PROJ_PE, KEY_CI_LB, KEY_CI_UB, kind.stored_key, KEY_SB_HAT))
    notes = (NOTE_LINEAR_TEMPLATE.format(peval=format_level(result.forecast.peval)),) if result.forecast else ()
    return ResultsTable(
        title=title,
        columns=("PE", "CI_LB", "CI_UB", estimand_column, "SB_hat"),
        rows=(row,),
        results=results,
        notes=notes,
    )


def dynamic_results_table(result: DynamicResult, time: str) -> ResultsTable:
    """Table of an rdid-dy run: one row per post-period level, failed levels blank."""
    config = result.config
    results = result.stored_results()

    if config.rdidtype is RdidType.BOUNDS:
        columns = ("RDID_LB", "RDID_UB", "CI_LB", "CI_UB")
        templates = (KEY_DY_LB_TEMPLATE, KEY_DY_UB_TEMPLATE, KEY_DY_CI_LB_TEMPLATE, KEY_DY_CI_UB_TEMPLATE)
        notes = [NOTE_DY_CI_BY_TYPE[config.citype.value]]
    else:
        columns = ("RDID_PE", "CI_LB", "CI_UB")
        templates = (KEY_DY_PE_TEMPLATE, KEY_DY_CI_LB_TEMPLATE, KEY_DY_CI_UB_TEMPLATE)
        if config.rdidtype is RdidType.POLICY:
            notes = [NOTE_DY_PO_TEMPLATE.format(loss=config.losstype.label)]
        else:
            notes = [NOTE_DY_LINEAR]

    rows = []
    for row in result.rows:
        t = format_level(row.t)
        if row.ok:
            rows.append(TableRow(t, tuple(template.format(t=t) for template in templates)))
        else:
            rows.append(TableRow(t, (None,) * len(columns)))
            notes.append(NOTE_DY_ERROR_TEMPLATE.format(t=t, error=row.error))

    return ResultsTable(
        title=LABEL_TIME_TEMPLATE.format(time=time),
        columns=columns,
        rows=tuple(rows),
        results=results,
        notes=tuple(notes),
    )


def staggered_results_table(result: StaggeredResult) -> ResultsTable:
    """Table of an rdidstag run: ATT(g/t) rows ordered by cohort, then period."""
    level = format_level(result.level)
    design = result.design
    notes = [
        NOTE_STAG_INFO_TEMPLATE.format(levels=format_levels(design.info_levels)),
        NOTE_STAG_POST_TEMPLATE.format(levels=format_levels(design.post_periods)),
        NOTE_STAG_GROUPS_TEMPLATE.format(levels=format_levels(design.groups)),
    ]

    rows = []
    for cell in result.cells:
        g, t = format_level(cell.g), format_level(cell.t)
        label = LABEL_STAG_ROW_TEMPLATE.format(g=g, t=t)
        if cell.ok:
            keys = tuple(
                template.format(g=g, t=t)
                for template in (KEY_STAG_LB_TEMPLATE, KEY_STAG_UB_TEMPLATE, KEY_STAG_CI_LB_TEMPLATE, KEY_STAG_CI_UB_TEMPLATE)
            )
            rows.append(TableRow(label, keys))
        else:
            rows.append(TableRow(label, (None,) * 4))
            notes.append(NOTE_STAG_ERROR_TEMPLATE.format(g=g, t=t, error=cell.error))

    return ResultsTable(
        title=LABEL_STAG_TITLE,
        columns=("RDID_LB", "RDID_UB", f"{level}CI_LB", f"{level}CI_UB"),
        rows=tuple(rows),
        results=result.stored_results(),
        notes=tuple(notes),
    )


def simulation_results_table(report: SimulationReport) -> ResultsTable:
    """Coverage table: CP_inf and average length per interval type (per cell for staggered designs)."""
    results: dict[str, float] = {}
    rows = []
    for row in report.rows:
        if row.g is None:
            label = LABEL_CI_ROW_TEMPLATE.format(index=row.ci_type)
            cp_key = KEY_SIM_CP_TEMPLATE.format(index=row.ci_type)
            length_key = KEY_SIM_LENGTH_TEMPLATE.format(index=row.ci_type)
        else:
            g, t = format_level(row.g), format_level(row.t)
            label = LABEL_STAG_ROW_TEMPLATE.format(g=g, t=t)
            cp_key = KEY_SIM_STAG_CP_TEMPLATE.format(g=g, t=t)
            length_key = KEY_SIM_STAG_LENGTH_TEMPLATE.format(g=g, t=t)
        # Cells without a successful simulation stay blank
        if row.sims:
            results[cp_key] = row.cp_inf
            results[length_key] = row.avg_length
            rows.append(TableRow(label, (cp_key, length_key)))
        else:
            rows.append(TableRow(label, (None, None)))

    return ResultsTable(
        title=LABEL_SIM_TITLE_TEMPLATE.format(dgp=report.spec.kind.value, n=report.spec.n),
        columns=("CP_inf", "Length"),
        rows=tuple(rows),
        results=results,
        notes=(NOTE_SIM_TEMPLATE.format(sims=report.sims, failures=report.failures),),
    )


def truth_results_table(truths: TruthSet, kind: DgpKind) -> ResultsTable:
    """Analytic ATT and identified set of a design: per period (dip), single row (covariate) or per (g, t)."""
    if kind is DgpKind.ASHENFELTER_DIP:
        cells = [(format_level(t), format_level(t), identified) for t, identified in truths.periods.items()]
    elif kind is DgpKind.COVARIATE_EXAMPLE:
        cells = [("Theta_I", "1", truths.primary)]
    else:
        cells = [
            (LABEL_STAG_ROW_TEMPLATE.format(g=format_level(g), t=format_level(t)), f"{format_level(g)}_{format_level(t)}", identified)
            for (g, t), identified in truths.cells.items()
        ]

    results: dict[str, float] = {}
    rows = []
    for label, cell, identified in cells:
        keys = (
            KEY_TRUTH_ATT_TEMPLATE.format(cell=cell),
            KEY_TRUTH_LB_TEMPLATE.format(cell=cell),
            KEY_TRUTH_UB_TEMPLATE.format(cell=cell),
        )
        results.update(zip(keys, (identified.att, identified.lower, identified.upper), strict=True))
        rows.append(TableRow(label, keys))

    return ResultsTable(
        title=LABEL_TRUTH_TITLE,
        columns=("ATT", "LB", "UB"),
        rows=tuple(rows),
        results=results,
        notes=(NOTE_TRUTH_TEMPLATE.format(c=truths.c),),
    )
