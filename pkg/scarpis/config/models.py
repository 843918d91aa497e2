"""
Configuration models using Pydantic.
"""
from __future__ import annotations

from enum import Enum
from pathlib import Path
from typing import Any, Optional

import yaml
from pydantic import BaseModel, Field, ValidationError
from pydantic_settings import (
    BaseSettings,
    PydanticBaseSettingsSource,
    SettingsConfigDict,
    SettingsError,
)

from scarpis.errors import ConfigError
from scarpis.field.gf import DEFAULT_MAX_FIELD_ORDER
from scarpis.matrix.sign import DEFAULT_MAX_MATRIX_ORDER

ENV_PREFIX = "SCARPIS_"


class MatrixFormat(str, Enum):
    """Text formats for sign matrices."""
    PM = "pm"
    INT = "int"


class FieldConfig(BaseModel):
    """Limits for finite field construction."""
    max_order: int = Field(
        default=DEFAULT_MAX_FIELD_ORDER, ge=2, description="Largest accepted field order q"
    )


class MatrixConfig(BaseModel):
    """Limits for dense sign matrices."""
    max_order: int = Field(
        default=DEFAULT_MAX_MATRIX_ORDER, ge=1, description="Largest accepted matrix side"
    )


class VerifyConfig(BaseModel):
    """Gram check parallelism."""
    workers: int = Field(default=1, ge=1, description="Threads scanning row chunks")
    chunk_rows: int = Field(default=64, ge=1, description="Rows per work unit")


class OutputConfig(BaseModel):
    """Defaults for written matrices."""
    format: MatrixFormat = Field(default=MatrixFormat.PM, description="Output format")
    timestamp: bool = Field(default=True, description="Write a timestamp comment")


class ScarpisConfig(BaseSettings):
    """Main application configuration with environment variable support.

    Environment variables override the YAML file, one key at a time:
    SCARPIS_VERIFY__WORKERS=4 sets verify.workers.
    """

    model_config = SettingsConfigDict(
        env_prefix=ENV_PREFIX,
        env_nested_delimiter="__",
        case_sensitive=False,
        extra="forbid",
    )

    field: FieldConfig = Field(default_factory=FieldConfig)
    matrix: MatrixConfig = Field(default_factory=MatrixConfig)
    verify: VerifyConfig = Field(default_factory=VerifyConfig)
    output: OutputConfig = Field(default_factory=OutputConfig)

    @classmethod
    def settings_customise_sources(
        cls,
        settings_cls: type[BaseSettings],
        init_settings: PydanticBaseSettingsSource,
        env_settings: PydanticBaseSettingsSource,
        dotenv_settings: PydanticBaseSettingsSource,
        file_secret_settings: PydanticBaseSettingsSource,
    ) -> tuple[PydanticBaseSettingsSource, ...]:
        # Environment first: it outranks values loaded from the YAML file.
        return env_settings, init_settings


def load_config(path: Optional[Path] = None) -> ScarpisConfig:
    """Load configuration from an optional YAML file plus environment overrides.

    Args:
        path: YAML file with a mapping of sections; None uses defaults only.

    Returns:
        The validated configuration.

    Raises:
        FileNotFoundError: If path is given but does not exist.
        ConfigError: If the file or an override is invalid.
    """
    data: dict[str, Any] = {}
    if path is not None:
        if not path.exists():
            raise FileNotFoundError(f"Config file not found: {path}")
        try:
            loaded = yaml.safe_load(path.read_text(encoding="utf-8"))
        except yaml.YAMLError as e:
            raise ConfigError(f"Config file {path} is not valid YAML") from e
        if loaded is not None and not isinstance(loaded, dict):
            raise ConfigError(f"Config file {path} must contain a mapping")
        data = dict(loaded or {})

    try:
        return ScarpisConfig(**data)
    except (ValidationError, SettingsError) as e:
        raise ConfigError(f"Invalid configuration: {e}") from e
