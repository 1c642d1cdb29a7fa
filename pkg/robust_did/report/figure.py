"""
SVG Figures

Scatter plots of selection bias profiles and band plots of per-period or per-cohort
bounds. Output bytes depend only on the series: matplotlib's SVG hash salt is fixed and
the date metadata is dropped.
"""

import logging
from dataclasses import dataclass
from pathlib import Path

import matplotlib
from matplotlib.figure import Figure

from ..constants import EMPTY_SERIES_ERROR, FIGURE_WRITE_ERROR, SERIES_LENGTH_ERROR, SVG_HASH_SALT
from ..dynamics import DynamicResult
from ..enums import FigureKind, RdidType
from ..exceptions import ReportError
from ..models import SelectionBiasProfile
from ..staggered import StaggeredResult
from ..utils import format_level


logger = logging.getLogger(__name__)

LINE_COLOR = "#4c72b0"
BAND_COLOR = "#dd8452"


@dataclass(frozen=True)
class FigureSeries:
    """
    Data of one figure.

    Attributes:
        x (tuple[float, ...]): Positions on the horizontal axis
        lower (tuple[float, ...]): Scatter values, point estimates or lower bounds
        upper (tuple[float, ...] | None): Upper bounds, drawn as a second line
        band_lower (tuple[float, ...] | None): Lower edge of the shaded band
        band_upper (tuple[float, ...] | None): Upper edge of the shaded band
        title (str): Axes title
        xlabel (str): Horizontal axis label
        ylabel (str): Vertical axis label
    """

    x: tuple[float, ...]
    lower: tuple[float, ...]
    upper: tuple[float, ...] | None = None
    band_lower: tuple[float, ...] | None = None
    band_upper: tuple[float, ...] | None = None
    title: str = ""
    xlabel: str = ""
    ylabel: str = ""

    def __post_init__(self):
        """Normalize to float tuples and check lengths."""
        expected = len(self.x)
        for name in ("x", "lower", "upper", "band_lower", "band_upper"):
            values = getattr(self, name)
            if values is None:
                continue
            values = tuple(float(v) for v in values)
            if len(values) != expected:
                raise ReportError(SERIES_LENGTH_ERROR.format(name=name, actual=len(values), expected=expected))
            object.__setattr__(self, name, values)

    def __len__(self) -> int:
        return len(self.x)

    @property
    def has_band(self) -> bool:
        return self.band_lower is not None and self.band_upper is not None


def emit_figure(series: FigureSeries, kind: FigureKind, path: str | Path) -> Path:
    """
    Draw a series and save it as SVG.

    Args:
        series: Data to draw
        kind: SCATTER draws points; BAND draws lines over a shaded interval band
        path: Output file

    Returns:
        Path of the written file

    Raises:
        ReportError: If the series is empty (no file is written) or the file cannot be written
    """
    if len(series) == 0:
        raise ReportError(EMPTY_SERIES_ERROR)

    path = Path(path)
    fig = Figure(figsize=(6.0, 4.0), layout="tight")
    ax = fig.add_subplot()

    if FigureKind(kind) is FigureKind.SCATTER:
        ax.scatter(series.x, series.lower, color=LINE_COLOR, zorder=3)
    else:
        if series.has_band:
            ax.fill_between(series.x, series.band_lower, series.band_upper, alpha=0.25, color=BAND_COLOR, linewidth=0)
            ax.plot(series.x, series.band_lower, color=BAND_COLOR, linewidth=0.8, linestyle="--")
            ax.plot(series.x, series.band_upper, color=BAND_COLOR, linewidth=0.8, linestyle="--")
        ax.plot(series.x, series.lower, color=LINE_COLOR, linewidth=1.2, marker="o")
        if series.upper is not None:
            ax.plot(series.x, series.upper, color=LINE_COLOR, linewidth=1.2, marker="o")

    ax.axhline(0.0, color="black", linewidth=0.5)
    ax.set_xticks(series.x, labels=[format_level(v) for v in series.x])
    ax.set_title(series.title, fontsize=9)
    ax.set_xlabel(series.xlabel, fontsize=8)
    ax.set_ylabel(series.ylabel, fontsize=8)
    ax.spines["top"].set_visible(False)
    ax.spines["right"].set_visible(False)

    try:
        with matplotlib.rc_context({"svg.hashsalt": SVG_HASH_SALT, "svg.fonttype": "path"}):
            fig.savefig(path, format="svg", metadata={"Date": None})
    except OSError as e:
        raise ReportError(FIGURE_WRITE_ERROR.format(path=path, error=e)) from e

    logger.debug("Wrote figure %s", path)
    return path


def profile_series(profile: SelectionBiasProfile, info: str) -> FigureSeries:
    """Estimated selection bias against information level."""
    return FigureSeries(
        x=tuple(profile.levels.tolist()),
        lower=tuple(profile.sb.tolist()),
        title="Estimated selection biases",
        xlabel=info,
        ylabel="SB",
    )


def dynamic_series(result: DynamicResult, time: str) -> FigureSeries:
    """Per-period bounds (or point estimates) with their confidence band; failed periods are left out."""
    rows = [row for row in result.rows if row.ok]
    bounds = result.config.rdidtype is RdidType.BOUNDS
    return FigureSeries(
        x=tuple(row.t for row in rows),
        lower=tuple(row.lower if bounds else row.point for row in rows),
        upper=tuple(row.upper for row in rows) if bounds else None,
        band_lower=tuple(row.ci.lower for row in rows),
        band_upper=tuple(row.ci.upper for row in rows),
        title="RDID estimates",
        xlabel=time,
        ylabel="ATT",
    )


def cohort_series(result: StaggeredResult, g: float, time: str) -> FigureSeries:
    """Bounds on ATT(g, t) over post periods t of one cohort; failed cells are left out."""
    cells = [cell for cell in result.cohort_cells(g) if cell.ok]
    return FigureSeries(
        x=tuple(cell.t for cell in cells),
        lower=tuple(cell.bounds.lower for cell in cells),
        upper=tuple(cell.bounds.upper for cell in cells),
        band_lower=tuple(cell.ci.lower for cell in cells),
        band_upper=tuple(cell.ci.upper for cell in cells),
        title=f"ATT({format_level(g)}/t)",
        xlabel=time,
        ylabel="ATT",
    )
