"""Application configuration using Pydantic Settings"""
from pydantic import Field
from pydantic_settings import BaseSettings
from typing import Optional


class Settings(BaseSettings):
    """Settings loaded from environment variables (and .env when present)"""

    # Worker pool
    SADIC_THREADS: Optional[int] = Field(None, ge=1)

    # Logging
    LOG_LEVEL: str = "WARNING"

    # Generation defaults
    DEFAULT_DEPTH_BUDGET: int = Field(64, ge=1)
    DEFAULT_WINDOW: int = Field(10000, ge=2)
    DEFAULT_MAX_U_LEN: int = Field(50, ge=1)
    DEFAULT_LR_LEVELS: int = Field(6, ge=0)

    # Upper bound when a window is grown after an incomplete return-word table
    MAX_WINDOW: int = Field(4_000_000, ge=2)

    class Config:
        env_file = ".env"
        case_sensitive = True
        extra = "ignore"


settings = Settings()
