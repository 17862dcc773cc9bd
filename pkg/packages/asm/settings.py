"""Runtime settings, read from ASMGRID_* environment variables or a .env file."""

from functools import lru_cache

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class AsmGridSettings(BaseSettings):
    """Limits and defaults for enumeration, scans and audits."""

    model_config = SettingsConfigDict(
        env_prefix="ASMGRID_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    max_n: int = Field(7, ge=1, description="Largest n accepted by enumerate_asms")
    oracle_max_n: int = Field(5, ge=1, description="Largest n for brute-force filtering")
    lattice_max_dim: int = Field(5, ge=0, description="Largest face dimension for face_lattice")
    classify_max_dim: int = Field(4, ge=0, le=4)
    classify_max_n: int = Field(5, ge=1)
    scan_budget: int = Field(200_000, gt=0, description="Faces visited per scan")
    cycle_samples: int = Field(1000, gt=0)
    sample_seed: int = 0
    log_level: str = "WARNING"


@lru_cache(maxsize=1)
def get_settings() -> AsmGridSettings:
    """Return the process-wide settings instance."""
    return AsmGridSettings()
