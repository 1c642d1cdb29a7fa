"""
Robust-DID Utility Functions

Formatting helpers shared by stored-result keys, table labels and figure names.
"""

import math
from collections.abc import Iterable


def format_level(value: float) -> str:
    """
    Format an information level, period or cohort for keys and labels.

    Integer-valued numbers print without a decimal part (2004.0 -> "2004", -1.0 -> "-1");
    anything else prints as its shortest round-trip representation.

    Args:
        value: Level value

    Returns:
        Display string
    """
    value = float(value)
    if math.isfinite(value) and value.is_integer():
        return str(int(value))
    return repr(value)


def format_levels(values: Iterable[float]) -> str:
    """Space-separated formatted levels."""
    return " ".join(format_level(v) for v in values)
