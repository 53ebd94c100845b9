from pydantic_settings import BaseSettings
from functools import lru_cache


class Settings(BaseSettings):
    """Application settings"""

    APP_NAME: str = "ModularCategoryEngine"
    DEBUG: bool = False
    ENVIRONMENT: str = "development"
    HOST: str = "0.0.0.0"
    PORT: int = 8000
    CORS_ORIGINS: str = "*"

    LOG_DIR: str = "logs"
    REPORT_DIR: str = "reports"
    SCHEMA_VERSION: str = "1.0"

    DEFAULT_PRIME: int = 3
    SEED: int = 0
    WORKERS: int = 4

    SPLIT_RETRIES: int = 24
    ISO_RANDOM_TRIES: int = 64
    EXHAUSTIVE_HOM_LIMIT: int = 4
    RANDOM_SIMPLICITY_VECTORS: int = 32
    RADICAL_ALGEBRA_MAX_DIM: int = 12
    ORACLE_POINT_BUDGET: int = 20000

    class Config:
        env_file = ".env"
        case_sensitive = True
        extra = "ignore"


@lru_cache()
def get_settings() -> Settings:
    """Get cached settings instance."""
    return Settings()
