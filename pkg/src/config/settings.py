import os

from pydantic import Field, ValidationError
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    model_config = SettingsConfigDict(
        env_prefix="EXACT_BOUNDS_",
        env_file=".env",
        case_sensitive=False,
        extra="ignore",
    )

    # Application
    environment: str = Field("development", description="Deployment environment")
    log_level: str = Field("WARNING", description="Root log level")
    log_json: bool = Field(False, description="Render log lines as JSON")

    # Exploration limits
    state_budget: int = Field(50_000_000, ge=1, description="Maximal number of stored symbolic states")
    jobs: int = Field(1, ge=1, description="Concurrent per-core explorations")
    subsumption: bool = Field(True, description="Discard states included in a stored zone")

    # Oracle
    oracle_horizon: int | None = Field(None, ge=1, description="Digitized horizon, default 2 x lcm of hyperperiods")

    # Reporting
    time_unit: str = Field("tu", description="Unit label printed next to bounds")

    @property
    def is_production(self) -> bool:
        """Check if running in production mode"""
        return self.environment.lower() in ("production", "prod")


def load_settings() -> Settings:
    """Settings from the environment; outside production a malformed environment falls back to defaults"""
    try:
        return Settings()
    except ValidationError:
        fallback = Settings.model_construct(environment=os.getenv("EXACT_BOUNDS_ENVIRONMENT", "development"))
        if fallback.is_production:
            raise
        return fallback


# Global settings instance
settings = load_settings()
