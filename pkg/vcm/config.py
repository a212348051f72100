# vcm/config.py
"""
Runtime settings, read from the environment (prefix VCM_) and an optional .env file
"""
from functools import lru_cache

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Library-wide knobs; every guarded operation also accepts an explicit override"""

    model_config = SettingsConfigDict(env_prefix="VCM_", env_file=".env", extra="ignore")

    enumeration_guard: int = 10_000_000
    vote_pattern_guard: int = 20
    tie_tolerance: float = 1e-9
    decimals: int = 6
    threads: int = 1
    log_level: str = "WARNING"
    min_dataset_voters: int = 15
    min_dataset_candidates: int = 20
    default_committee_size: int = 11


@lru_cache
def get_settings() -> Settings:
    return Settings()
