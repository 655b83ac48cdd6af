"""
Engine settings and configuration management
Uses pydantic-settings for type-safe environment variable handling
"""

from pathlib import Path
from pydantic_settings import BaseSettings, SettingsConfigDict
from pydantic import Field, field_validator
from dotenv import load_dotenv

# Path resolution: app/config/settings.py -> app/config/ -> app/ -> project_root/
PROJECT_ROOT = Path(__file__).resolve().parent.parent.parent
ENV_PATH = PROJECT_ROOT / ".env"

if ENV_PATH.exists():
    load_dotenv(dotenv_path=ENV_PATH, override=False)


class Settings(BaseSettings):
    """
    Engine settings loaded from environment variables
    """

    model_config = SettingsConfigDict(
        env_file=str(ENV_PATH),
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    # Field and table defaults
    field_char: int = Field(default=32003)
    max_n: int = Field(default=30)
    max_n_retry_factor: int = Field(default=2)

    # Artin-Rees truncation and fitting
    stabilization_window: int = Field(default=3)
    # number of truncation degrees tried past the largest generator degree
    truncation_cap: int = Field(default=40)

    # Reduction search
    reduction_window: int = Field(default=3)
    reduction_attempts: int = Field(default=10)

    # Groebner resource caps
    groebner_max_pairs: int = Field(default=200000)
    groebner_max_degree: int = Field(default=400)
    max_variables: int = Field(default=4)

    # Parallelism for independent table rows / fuzz cases
    workers: int = Field(default=1)

    # Service configuration
    log_level: str = Field(default="INFO")
    environment: str = Field(default="development")
    backend_port: int = Field(default=8000)
    corpus_dir: Path = Field(default=PROJECT_ROOT / "corpus")

    @field_validator("stabilization_window", "workers", "reduction_attempts")
    @classmethod
    def _positive(cls, value: int) -> int:
        if value < 1:
            raise ValueError("must be >= 1")
        return value

    @field_validator("log_level")
    @classmethod
    def _upper_level(cls, value: str) -> str:
        return value.upper()


# Create global settings instance
settings = Settings()


def get_settings() -> Settings:
    """
    Get engine settings instance
    """
    return settings
