"""
Configuration settings for the High-Rank Loci toolkit
"""
from pydantic_settings import BaseSettings
from typing import Optional


class Settings(BaseSettings):
    """Application settings"""

    # Application
    app_name: str = "High-Rank Loci"
    app_version: str = "1.0.0"

    # Logging
    log_level: str = "INFO"
    log_file: Optional[str] = None

    # Exact elimination limits
    extension_degree_limit: int = 24  # largest simple extension Q[x]/(m) we compute in
    combination_draws: int = 3  # independent resultants whose gcd forms an eliminant
    generic_draws: int = 8  # redraws of a "generic" kernel element

    # Curve rank computations
    trisecant_max_degree: int = 7
    trisecant_base_points: int = 2

    # Verifiers
    seed_schedule_length: int = 16
    record_timings: bool = False

    class Config:
        env_prefix = "HRL_"
        env_file = ".env"
        env_file_encoding = "utf-8"


# Global settings instance
settings = Settings()
