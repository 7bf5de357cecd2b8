"""Configuration management."""

import logging

from pydantic import BaseModel, ConfigDict, Field, ValidationError
from pydantic_settings import BaseSettings, SettingsConfigDict

logger = logging.getLogger(__name__)


class QuadratureConfig(BaseModel):
    """Tanh-sinh quadrature configuration."""

    model_config = ConfigDict(frozen=True, allow_inf_nan=False)

    rel_tol: float = Field(
        default=1e-12, gt=0.0, le=1e-3, description="Relative agreement between levels"
    )
    abs_tol_log: float = Field(
        default=-745.0, description="Log-domain floor below which values are reported as tiny"
    )
    max_levels: int = Field(default=12, ge=4, description="Maximum number of step halvings")


class Settings(BaseSettings):
    """Library settings loaded from environment variables."""

    model_config = SettingsConfigDict(
        env_prefix="BERGMAN_REG_",
        env_nested_delimiter="__",
        case_sensitive=False,
    )

    log_level: str = Field(default="INFO", description="Logging level")
    n_max: int = Field(default=1024, ge=0, le=100_000, description="Sweep table size")
    seed: int = Field(default=42, ge=0, description="Default random seed")
    quadrature: QuadratureConfig = Field(
        default_factory=QuadratureConfig, description="Quadrature configuration"
    )


def load_settings() -> Settings:
    """Load library settings from environment variables.

    Returns:
        Settings instance (defaults if the environment is invalid)
    """
    try:
        settings = Settings()
        logger.debug(
            f"Settings loaded - log level: {settings.log_level}, n_max: {settings.n_max}, "
            f"rel_tol: {settings.quadrature.rel_tol}"
        )
        return settings
    except ValidationError as e:
        logger.error(f"Configuration validation error: {e}")
        return Settings.model_construct()
