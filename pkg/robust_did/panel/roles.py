"""
Variable Roles Module

Maps estimation roles (outcome, treatment, post indicator, information index, ...) onto dataset columns.
"""

from dataclasses import dataclass, fields, replace
from itertools import combinations

from ..constants import (
    ROLE_DUPLICATE_ERROR,
    ROLE_MISSING_ERROR,
    ROLE_NOT_ALLOWED_ERROR,
    ROLE_OUTCOME_REQUIRED_ERROR,
)
from ..enums import Command
from ..exceptions import RoleError


# Single-column roles, in display order
SCALAR_ROLES = ("outcome", "treat", "post", "info", "time", "cohort", "cluster")

# Roles each command requires and roles it rejects; the remaining roles are optional
_REQUIRED_ROLES: dict[Command, tuple[str, ...]] = {
    Command.RDID: ("outcome", "treat", "post", "info"),
    Command.RDID_DY: ("outcome", "treat", "post", "info", "time"),
    Command.RDIDSTAG: ("outcome", "cohort", "time"),
}
_REJECTED_ROLES: dict[Command, tuple[str, ...]] = {
    Command.RDID: ("time", "cohort"),
    Command.RDID_DY: ("cohort",),
    Command.RDIDSTAG: ("treat",),
}


@dataclass(frozen=True)
class VariableRoles:
    """
    Column names assigned to each estimation role.

    Attributes:
        outcome (str): Outcome column (always required)
        treat (str | None): Binary treatment indicator
        post (str | None): Binary post-treatment period indicator
        info (str | None): Information index (pre-periods or a discrete covariate)
        time (str | None): Time index
        cohort (str | None): First treatment period, 0 for never treated
        cluster (str | None): Resampling cluster identifier
        covariates (tuple[str, ...]): Covariates for the doubly robust estimand
    """

    outcome: str
    treat: str | None = None
    post: str | None = None
    info: str | None = None
    time: str | None = None
    cohort: str | None = None
    cluster: str | None = None
    covariates: tuple[str, ...] = ()

    def __post_init__(self):
        """Validate role uniqueness after initialization."""
        if not self.outcome:
            raise RoleError(ROLE_OUTCOME_REQUIRED_ERROR)

        # Normalize lists passed by callers
        object.__setattr__(self, "covariates", tuple(self.covariates))

        assigned = self.assigned()
        for (first, first_col), (second, second_col) in combinations(assigned, 2):
            if first_col != second_col:
                continue
            # The information index may be the time index itself
            if {first, second} == {"info", "time"}:
                continue
            raise RoleError(ROLE_DUPLICATE_ERROR.format(first=first, second=second, column=first_col))

    def assigned(self) -> list[tuple[str, str]]:
        """
        List every assigned (role, column) pair, covariates last.

        Returns:
            Pairs in display order
        """
        pairs = [(role, getattr(self, role)) for role in SCALAR_ROLES if getattr(self, role)]
        pairs.extend((f"covariate[{i}]", name) for i, name in enumerate(self.covariates))
        return pairs

    def columns(self) -> list[str]:
        """Distinct column names referenced by the roles, in display order."""
        seen: list[str] = []
        for _, column in self.assigned():
            if column not in seen:
                seen.append(column)
        return seen

    def require(self, command: Command) -> "VariableRoles":
        """
        Check that exactly the roles the command uses are assigned.

        Args:
            command: Command about to run

        Returns:
            Self for method chaining

        Raises:
            RoleError: If a required role is missing or a rejected role is assigned
        """
        for role in _REQUIRED_ROLES.get(command, ("outcome",)):
            if not getattr(self, role):
                raise RoleError(ROLE_MISSING_ERROR.format(command=command.value, role=role))
        for role in _REJECTED_ROLES.get(command, ()):
            if getattr(self, role):
                raise RoleError(ROLE_NOT_ALLOWED_ERROR.format(command=command.value, role=role))
        return self

    def for_command(self, command: Command) -> "VariableRoles":
        """
        Drop roles the command rejects, then check the required ones.

        Used by in-process callers whose datasets carry a full set of roles
        (for example simulated panels that also record time and cohort).

        Args:
            command: Command about to run

        Returns:
            Restricted roles
        """
        cleared = {role: None for role in _REJECTED_ROLES.get(command, ())}
        return replace(self, **cleared).require(command)

    def to_dict(self) -> dict[str, str | list[str] | None]:
        """Plain mapping used in JSON payloads."""
        result: dict[str, str | list[str] | None] = {}
        for f in fields(self):
            value = getattr(self, f.name)
            result[f.name] = list(value) if isinstance(value, tuple) else value
        return result
