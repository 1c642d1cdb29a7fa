"""
Machine Payloads

JSON payloads of command results and CSV export of results tables.

Payload layout:
    {"command": ..., "options": {...}, "results": {stored-result key: value},
     "meta": {"n_obs": ..., "seed": ..., "version": ...}, "table": {...}}
"""

import json
import logging
from pathlib import Path
from typing import Any

from ..constants import EXPORT_WRITE_ERROR, PAYLOAD_READ_ERROR
from ..enums import Command
from ..exceptions import ReportError
from .table import ResultsTable


logger = logging.getLogger(__name__)


def build_payload(command: Command, options: dict[str, Any], table: ResultsTable, meta: dict[str, Any]) -> dict[str, Any]:
    """
    Assemble the JSON payload of one command run.

    Args:
        command: Command that produced the table
        options: Parsed options (roles, estimator and inference settings)
        table: Rendered results; its stored results become the payload's results
        meta: Run metadata such as n_obs and seed

    Returns:
        JSON-serializable mapping
    """
    from .. import __version__

    return {
        "command": command.value,
        "options": options,
        "results": dict(table.results),
        "meta": {**meta, "version": __version__},
        "table": table.to_payload(),
    }


def write_json(payload: dict[str, Any], path: str | Path) -> Path:
    """Write a payload; floats keep their shortest round-trip form."""
    path = Path(path)
    try:
        path.write_text(json.dumps(payload, indent=2, allow_nan=False) + "\n", encoding="utf-8")
    except (OSError, ValueError) as e:
        raise ReportError(EXPORT_WRITE_ERROR.format(path=path, error=e)) from e
    logger.debug("Wrote payload to %s", path)
    return path


def read_json(path: str | Path) -> dict[str, Any]:
    path = Path(path)
    try:
        return json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as e:
        raise ReportError(PAYLOAD_READ_ERROR.format(path=path, error=e)) from e


def write_csv(table: ResultsTable, path: str | Path) -> Path:
    """Write one CSV row per table row."""
    path = Path(path)
    try:
        table.to_frame().to_csv(path, index=False)
    except OSError as e:
        raise ReportError(EXPORT_WRITE_ERROR.format(path=path, error=e)) from e
    logger.debug("Wrote table to %s", path)
    return path
