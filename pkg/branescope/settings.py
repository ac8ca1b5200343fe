"""
Settings for branescope.

Precedence: explicit overrides (CLI flags) > BRANESCOPE_* environment >
YAML settings file > defaults.
"""
from pathlib import Path
from typing import Literal, Optional

import yaml
from pydantic import ValidationError as PydanticValidationError
from pydantic import field_validator, model_validator
from pydantic_settings import BaseSettings, EnvSettingsSource, SettingsConfigDict

from branescope.exceptions import UsageError

DEFAULT_SEED = 0xB4A17
MERSENNE_31 = 2**31 - 1


class BranescopeSettings(BaseSettings):
    """Run-wide configuration."""

    model_config = SettingsConfigDict(env_prefix="BRANESCOPE_", extra="ignore")

    seed: int = DEFAULT_SEED
    prime: int = MERSENNE_31
    genericity_retries: int = 3

    spanning_depth: int = 20
    spanning_window: int = 10

    probe_trials: int = 200
    root_cluster_tolerance: float = 1e-7
    instability_fraction: float = 0.05

    region_growth_limit: int = 8

    output_format: Literal["json", "csv"] = "json"
    log_level: str = "WARNING"

    @field_validator("seed")
    @classmethod
    def _seed_is_64_bit(cls, value: int) -> int:
        if not 0 <= value < 2**64:
            raise ValueError("seed must be an unsigned 64-bit integer")
        return value

    @field_validator("prime")
    @classmethod
    def _prime_is_odd(cls, value: int) -> int:
        if value < 3:
            raise ValueError("prime must be at least 3")
        return value

    @field_validator("probe_trials", "genericity_retries", "region_growth_limit")
    @classmethod
    def _positive(cls, value: int) -> int:
        if value < 1:
            raise ValueError("must be at least 1")
        return value

    @model_validator(mode="after")
    def _scan_window_fits(self):
        if not self.spanning_depth >= self.spanning_window >= 3:
            raise ValueError("spanning scan needs depth >= window >= 3")
        return self


def load_settings_file(config_path) -> dict:
    """
    Read a YAML settings file.

    Args:
        config_path: Path to the YAML file

    Returns:
        dict of setting values
    """
    try:
        content = yaml.safe_load(Path(config_path).read_text()) or {}
    except (OSError, yaml.YAMLError) as e:
        raise UsageError(f"Cannot read settings file {config_path}: {e}")

    if not isinstance(content, dict):
        raise UsageError(f"Settings file {config_path} must contain a mapping")

    return content


def get_settings(config_path: Optional[str] = None, **overrides) -> BranescopeSettings:
    """
    Build settings from all sources.

    Args:
        config_path: Optional YAML settings file
        **overrides: Explicit values; None entries are ignored

    Returns:
        Validated BranescopeSettings
    """
    values = load_settings_file(config_path) if config_path else {}

    # Environment beats the file
    values.update(EnvSettingsSource(BranescopeSettings)())

    values.update({k: v for k, v in overrides.items() if v is not None})

    try:
        return BranescopeSettings(**values)
    except PydanticValidationError as e:
        raise UsageError(f"Invalid settings: {e}")
