"""
Configuration Module

Provides the bootstrap plan and runtime configuration, with environment variable defaults.
"""

import logging
import os
from dataclasses import dataclass, field

from .constants import (
    DEFAULT_BREP,
    DEFAULT_LEVEL,
    DEFAULT_N_JOBS,
    DEFAULT_SEED,
    INVALID_FLOAT_ENV_ERROR,
    INVALID_INT_ENV_ERROR,
    LEVEL_ERROR,
    N_JOBS_ERROR,
    REPLICATES_ERROR,
    SEED_ERROR,
)
from .exceptions import ConfigError


def _parse_int_env(env_var: str, default: int, var_name: str) -> int:
    """
    Safely parse an integer from an environment variable.

    Args:
        env_var: Environment variable name
        default: Value used when the variable is unset or empty
        var_name: Variable name for error messages

    Returns:
        Parsed integer value

    Raises:
        ConfigError: If the environment variable does not hold an integer
    """
    value_str = os.getenv(env_var)
    if not value_str:
        return default
    try:
        return int(value_str)
    except ValueError as e:
        raise ConfigError(INVALID_INT_ENV_ERROR.format(name=var_name, env_var=env_var, value=value_str, example=default)) from e


def _parse_float_env(env_var: str, default: float, var_name: str) -> float:
    """
    Safely parse a float from an environment variable.

    Args:
        env_var: Environment variable name
        default: Value used when the variable is unset or empty
        var_name: Variable name for error messages

    Returns:
        Parsed float value

    Raises:
        ConfigError: If the environment variable does not hold a number
    """
    value_str = os.getenv(env_var)
    if not value_str:
        return default
    try:
        return float(value_str)
    except ValueError as e:
        raise ConfigError(INVALID_FLOAT_ENV_ERROR.format(name=var_name, env_var=env_var, value=value_str, example=default)) from e


def _parse_bool_env(env_var: str) -> bool:
    return os.getenv(env_var, "false").lower() in ("true", "1", "yes")


@dataclass(frozen=True)
class BootstrapPlan:
    """
    Cluster bootstrap settings shared by every confidence interval.

    Supports environment variable defaults so batch runs can be tuned without code changes.
    """

    replicates: int = field(default_factory=lambda: _parse_int_env("RDID_BREP", DEFAULT_BREP, "replicates"))
    """Number of bootstrap replicates. Default: RDID_BREP environment variable or 500."""

    seed: int = field(default_factory=lambda: _parse_int_env("RDID_SEED", DEFAULT_SEED, "seed"))
    """Root seed; replicate r draws from the substream (seed, r). Default: RDID_SEED or 20240601."""

    level: float = field(default_factory=lambda: _parse_float_env("RDID_LEVEL", DEFAULT_LEVEL, "level"))
    """Confidence level in percent. Default: RDID_LEVEL environment variable or 95."""

    cluster: str | None = None
    """Cluster column name. None resamples single rows."""

    n_jobs: int = field(default_factory=lambda: _parse_int_env("RDID_N_JOBS", DEFAULT_N_JOBS, "n_jobs"))
    """Parallel workers for replicates (-1 = all cores). Draws do not depend on it. Default: RDID_N_JOBS or 1."""

    def __post_init__(self):
        """Validate configuration after initialization."""
        if self.replicates < 2:
            raise ConfigError(REPLICATES_ERROR.format(value=self.replicates))

        if not 0.0 < self.level < 100.0:
            raise ConfigError(LEVEL_ERROR.format(value=self.level))

        if self.seed < 0:
            raise ConfigError(SEED_ERROR.format(value=self.seed))

        if self.n_jobs == 0 or self.n_jobs < -1:
            raise ConfigError(N_JOBS_ERROR.format(value=self.n_jobs))


@dataclass(frozen=True)
class RuntimeConfig:
    """
    Process-wide runtime settings.
    """

    debug: bool = field(default_factory=lambda: _parse_bool_env("RDID_DEBUG"))
    """Enable DEBUG logging for the robust_did logger. Default: RDID_DEBUG environment variable or False."""

    @property
    def log_level(self) -> int:
        return logging.DEBUG if self.debug else logging.INFO
