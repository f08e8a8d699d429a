"""
Application Configuration
"""
from pydantic_settings import BaseSettings
from pydantic import Field, ConfigDict, field_validator
import os


class Settings(BaseSettings):
    """Runtime settings for sweeps and simulations"""

    model_config = ConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        env_ignore_empty=True,
        extra="ignore",
        case_sensitive=True,
    )

    # Environment
    ENVIRONMENT: str = "dev"
    PROJECT_NAME: str = "sectorsec"

    # Logging
    LOG_LEVEL: str = "INFO"
    ENABLE_DEBUG_LOGGING: bool = False

    # Worker pool (0 = auto)
    SECTORSEC_THREADS: int = Field(default=0, ge=0)

    # Monte Carlo
    DEFAULT_MC_TRIALS: int = Field(default=1_000_000, ge=1)
    # Trials per random stream block; the block is the unit of stream derivation
    MC_BLOCK_SIZE: int = Field(default=65_536, ge=1)

    # Analytic
    SOP_INTEGRAL_ABS_TOL: float = Field(default=1e-8, gt=0)

    # Comparison report
    COMPARE_TOLERANCE_LOG10: float = Field(default=0.25, gt=0)
    COMPARE_FLOOR: float = Field(default=1e-6, gt=0)

    @field_validator("LOG_LEVEL")
    @classmethod
    def _upper_level(cls, value: str) -> str:
        return value.upper()

    def worker_count(self) -> int:
        """Resolve SECTORSEC_THREADS, where 0 means one worker per CPU"""
        if self.SECTORSEC_THREADS > 0:
            return self.SECTORSEC_THREADS
        return os.cpu_count() or 1


def get_settings() -> Settings:
    """
    Build settings from the current environment.

    A broken .env file is non-fatal: we log it and retry with environment
    variables only.
    """
    try:
        return Settings()
    except Exception as e:
        import logging
        import json
        logger = logging.getLogger(__name__)
        error_details_raw = {
            "error_type": type(e).__name__,
            "error_message": str(e),
            "operation": "load_settings",
        }
        logger.warning(f"[CONFIG] Failed to load .env file (RAW ERROR): {json.dumps(error_details_raw, indent=2, default=str)}. Continuing with environment variables only.")
        return Settings(_env_file=None)


settings = get_settings()
