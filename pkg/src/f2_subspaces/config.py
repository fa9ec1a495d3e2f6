from __future__ import annotations

from functools import lru_cache
from pathlib import Path
from typing import Any, Literal, Optional

import yaml
from pydantic import Field
from pydantic_settings import BaseSettings, PydanticBaseSettingsSource, SettingsConfigDict


class Settings(BaseSettings):
    """Tunable constants of the learning algorithms and the harness.

    Values come only from explicit arguments or a YAML settings file; environment variables
    and dotenv files are never consulted.
    """

    model_config = SettingsConfigDict(extra="forbid", frozen=True)

    log_level: Literal["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"] = "WARNING"
    log_format: Literal["json", "console"] = "json"

    # Dimension reduction
    base_dim: int = Field(default=10, ge=2, description="Target dimension of the projector")
    projector_retry_constant: int = Field(default=200, ge=1)

    # Comparability testing
    comparability_repetition_constant: float = Field(default=18.0, gt=0)

    # Hypothesis selection
    hypothesis_sample_constant: float = Field(default=600.0, gt=0)
    hypothesis_max_samples: int = Field(default=200_000, ge=1)
    # epsilon = w0_lower / hypothesis_grid_divisor
    hypothesis_grid_divisor: int = Field(default=100, ge=1)

    # Recovery
    incomparable_span_constant: float = Field(default=100.0, gt=0)
    max_lift_degree: int = Field(default=2, ge=1)
    weight_epsilon: float = Field(default=0.02, gt=0, lt=1)
    uniformity_constant: float = Field(default=32.0, gt=0)
    uniformity_max_samples: int = Field(default=1_000_000, ge=1)
    # Random projections tried when the full collision test is unaffordable
    uniformity_projection_rounds: int = Field(default=24, ge=1)

    # LPN bridge
    lpn_max_dimension: int = Field(default=20, ge=1)
    lpn_sample_factor: float = Field(default=4.0, gt=0)

    # Experiments
    workers: int = Field(default=1, ge=1)

    @classmethod
    def settings_customise_sources(
        cls,
        settings_cls: type[BaseSettings],
        init_settings: PydanticBaseSettingsSource,
        env_settings: PydanticBaseSettingsSource,
        dotenv_settings: PydanticBaseSettingsSource,
        file_secret_settings: PydanticBaseSettingsSource,
    ) -> tuple[PydanticBaseSettingsSource, ...]:
        return (init_settings,)


def load_settings(path: Optional[Path] = None, **overrides: Any) -> Settings:
    """Build settings from an optional YAML file plus keyword overrides."""

    values: dict[str, Any] = {}
    if path is not None:
        loaded = yaml.safe_load(Path(path).read_text(encoding="utf-8")) or {}
        if not isinstance(loaded, dict):
            raise ValueError(f"Settings file {path} must contain a mapping")
        values.update(loaded)
    values.update(overrides)
    return Settings(**values)


_settings_path: Optional[Path] = None


def configure_settings(path: Optional[Path] = None) -> Settings:
    """Point the cached settings at a YAML file and return the fresh instance."""

    global _settings_path
    _settings_path = path
    get_settings.cache_clear()
    return get_settings()


@lru_cache
def get_settings() -> Settings:
    """Return cached settings instance."""

    return load_settings(_settings_path)
