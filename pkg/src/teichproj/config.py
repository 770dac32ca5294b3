"""Configuration management for teich-projections."""

from functools import lru_cache

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Application settings loaded from environment variables."""

    model_config = SettingsConfigDict(
        env_prefix="TEICHPROJ_",
        env_file=".env",
        case_sensitive=False,
    )

    # Runtime
    log_level: str = "INFO"
    output_dir: str = "out"
    default_seed: int = 0
    max_workers: int = 1

    # Solver tolerances
    search_tolerance: float = 1e-10
    sublevel_tolerance: float = 1e-8
    maxmin_starts: int = 360
    certify_step: float = 0.01

    # Oracles and statistics
    slope_oracle_depth: int = 200
    bootstrap_resamples: int = 1000

    # Persistence
    constants_filename: str = "constants.json"


@lru_cache()
def get_settings() -> Settings:
    """Get cached settings instance."""
    return Settings()
