"""Toolkit settings and configuration."""
from functools import lru_cache
from pathlib import Path

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Toolkit settings loaded from environment variables."""

    # Parallelism (ENTBUFFER_THREADS caps simulation workers)
    threads: int = Field(default=1, ge=1)

    # Logging
    log_level: str = "INFO"

    # Numerical tolerances
    series_tolerance: float = Field(default=1e-12, gt=0)

    # Output formatting
    q_grid_points: int = Field(default=101, ge=2)
    csv_significant_digits: int = Field(default=9, ge=1, le=17)

    # Simulation defaults
    default_seed: int = Field(default=20240607, ge=0)
    default_t_sim: float = Field(default=50.0, gt=0)
    default_samples: int = Field(default=10_000, ge=2)

    # Verification suite
    verify_seed: int = Field(default=7, ge=0)
    verify_samples: int = Field(default=10_000, ge=2)

    model_config = SettingsConfigDict(
        env_prefix="ENTBUFFER_",
        # settings.py lives in entbuffer/, so parent.parent is the project root
        env_file=str(Path(__file__).parent.parent / ".env"),
        case_sensitive=False,
        extra="ignore",
    )


@lru_cache()
def get_settings() -> Settings:
    """Get cached settings instance."""
    return Settings()
