"""
Runtime configuration read from the environment (optionally seeded from a .env file).
"""
import os
from typing import Dict, Optional

from dotenv import load_dotenv
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from .errors import ConfigError

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR")

# Settings field -> environment variable
ENV_VARIABLES = {
    "state_cap": "TRAILRPQ_STATE_CAP",
    "oracle_max_edges": "TRAILRPQ_ORACLE_MAX_EDGES",
    "enumerate_oracle_max_edges": "TRAILRPQ_ENUM_ORACLE_MAX_EDGES",
    "summary_budget": "TRAILRPQ_SUMMARY_BUDGET",
    "summary_max_k": "TRAILRPQ_SUMMARY_MAX_K",
    "seed": "TRAILRPQ_SEED",
    "jobs": "TRAILRPQ_JOBS",
    "log_level": "TRAILRPQ_LOG_LEVEL",
}


class Settings(BaseModel):
    """Limits and defaults shared by the library and the CLI."""

    model_config = ConfigDict(str_strip_whitespace=True, validate_assignment=True, extra="forbid")

    state_cap: int = Field(default=2**20, ge=1, description="Maximum number of states of any constructed automaton")
    oracle_max_edges: int = Field(default=24, ge=1, description="Edge guard of the brute-force trail oracle")
    enumerate_oracle_max_edges: int = Field(default=20, ge=1, description="Edge guard of the all-trails oracle")
    summary_budget: int = Field(default=10**7, ge=1, description="Maximum number of candidate summaries per query")
    summary_max_k: int = Field(default=9, ge=1, description="Largest K for which auto dispatch uses the summary engine")
    seed: int = Field(default=20230613, description="Seed of all randomized generation")
    jobs: int = Field(default=1, ge=1, le=256, description="Parallel workers for classification checks")
    log_level: str = Field(default="WARNING", description="Root log level of the CLI")

    @field_validator("log_level")
    @classmethod
    def validate_log_level(cls, v: str) -> str:
        """Normalize and validate the log level name."""
        level = v.upper()
        if level not in LOG_LEVELS:
            raise ValueError(f"Invalid log level: {v}. Available: {', '.join(LOG_LEVELS)}")
        return level


def load_settings(env_file: Optional[str] = None) -> Settings:
    """Build settings from the environment.

    Args:
        env_file: Optional path of a .env file; variables already set in the
            environment take precedence over it.

    Returns:
        Validated settings.
    """
    load_dotenv(env_file, override=False)

    values: Dict[str, str] = {}
    for field, variable in ENV_VARIABLES.items():
        raw = os.getenv(variable)
        if raw is not None and raw.strip():
            values[field] = raw.strip()

    try:
        return Settings(**values)
    except ValidationError as e:
        error = e.errors()[0]
        field = str(error["loc"][0]) if error["loc"] else "settings"
        raise ConfigError(ENV_VARIABLES.get(field, field), error["msg"]) from e


_settings: Optional[Settings] = None


def get_settings() -> Settings:
    """Get or create the process-wide settings."""
    global _settings
    if _settings is None:
        _settings = load_settings()
    return _settings


def override_settings(**changes) -> Settings:
    """Replace the process-wide settings by a validated copy with some fields changed."""
    global _settings
    current = get_settings()
    try:
        _settings = Settings(**{**current.model_dump(), **changes})
    except ValidationError as e:
        error = e.errors()[0]
        field = str(error["loc"][0]) if error["loc"] else "settings"
        raise ConfigError(field, error["msg"]) from e
    return _settings


def reset_settings() -> None:
    """Drop the cached settings so the next access re-reads the environment."""
    global _settings
    _settings = None
