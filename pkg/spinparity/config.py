# spinparity/config.py

"""
Configuration Management
========================
All numerical tolerances and run settings in one place.
Every value can be overridden with an environment variable or a `.env` file.

Usage:
    from spinparity.config import settings
    print(settings.JACOBI_TOLERANCE)
"""

import os
from typing import Optional
from pydantic_settings import BaseSettings
from functools import lru_cache


class Settings(BaseSettings):
    """
    Application Settings

    All settings can be overridden via environment variables.
    Example: CHSH_GRID_N=36 python -m spinparity fig1
    """

    # ============ APP INFO ============
    APP_NAME: str = "Spin-Parity Correlations"
    APP_VERSION: str = "1.0.0"
    DEBUG: bool = False
    LOG_LEVEL: str = "INFO"

    # ============ LINEAR ALGEBRA ============
    JACOBI_TOLERANCE: float = 1e-13
    JACOBI_MAX_SWEEPS: int = 100
    HERMITIAN_TOLERANCE: float = 1e-9
    SYMMETRIC_TOLERANCE: float = 1e-12

    # ============ STATE VALIDATION ============
    TRACE_TOLERANCE: float = 1e-9
    PSD_TOLERANCE: float = 1e-9
    REAL_EXPECTATION_TOLERANCE: float = 1e-9

    # ============ SPECTRUM ============
    DEGENERACY_THRESHOLD: float = 1e-12
    NORMALIZATION_THRESHOLD: float = 1e-10

    # ============ THERMAL ============
    # beta * gap above this switches to the ground-state projector
    GROUND_STATE_CUTOFF: float = 745.0
    THRESHOLD_XTOL: float = 1e-6

    # ============ CHSH ORACLE ============
    CHSH_GRID_N: int = 24
    CHSH_REFINE_ITERS: int = 50

    # ============ FIGURES ============
    DEFAULT_DISCORD_SIDE: int = 1

    # ============ SWEEPS ============
    SPINPARITY_THREADS: Optional[int] = None
    SNAPSHOT_DIR: str = "snapshots"
    SNAPSHOT_TOLERANCE: float = 1e-9
    CSV_SIGNIFICANT_DIGITS: int = 17

    class Config:
        env_file = ".env"
        env_file_encoding = "utf-8"
        extra = "allow"


@lru_cache()
def get_settings() -> Settings:
    """Return cached settings instance."""
    return Settings()


settings = get_settings()


# ============ HELPER FUNCTIONS ============

def get_log_level() -> str:
    """DEBUG wins over LOG_LEVEL."""
    if settings.DEBUG:
        return "DEBUG"
    return settings.LOG_LEVEL.upper()


def get_thread_count(override: Optional[int] = None) -> int:
    """
    Number of worker threads for a sweep.

    Args:
        override: Value from the --threads flag, if given

    Returns:
        override, else SPINPARITY_THREADS, else the CPU count
    """
    if override is not None:
        return max(1, override)
    if settings.SPINPARITY_THREADS is not None:
        return max(1, settings.SPINPARITY_THREADS)
    return os.cpu_count() or 1
