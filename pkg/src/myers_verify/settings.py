"""Application settings and configuration."""

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Application settings.

    Every numerical default used by the services lives here so a whole run
    can be retuned from the environment (``MYERS_VERIFY_*``) without touching
    scenario files.
    """

    model_config = SettingsConfigDict(
        env_prefix="MYERS_VERIFY_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    # Application
    app_name: str = "Myers Verify"
    app_version: str = "0.1.0"
    debug: bool = False

    # Logging
    log_level: str = Field(default="INFO", description="structlog threshold")
    log_format: str = Field(
        default="console", description="Renderer: 'console' or 'json'"
    )

    # Integration
    integration_step: float = Field(
        default=1e-3, description="Fixed RK4 step for the Jacobi-form equation"
    )
    event_tolerance: float = Field(
        default=1e-10, description="Bisection tolerance for zero crossings of u"
    )

    # Geometry
    r_min: float = Field(
        default=1e-6, description="Smallest radius at which curvature is evaluated"
    )

    # Verification grids
    comparison_grid_step: float = Field(
        default=1e-2, description="Default grid step of the comparison checks"
    )
    min_grid_points: int = Field(
        default=10, description="Windows with fewer points get a finer step"
    )
    slack_tolerance: float = Field(
        default=1e-9, description="Slack above -tolerance counts as satisfied"
    )
    criterion_grid_points: int = Field(
        default=2000, description="Grid size of evaluate_criterion"
    )
    r_max_test: float = Field(
        default=50.0, description="Right end of tested windows on unbounded rays"
    )
    criterion_tail_radius: float = Field(
        default=1e6, description="Far end of the log-spaced tail on unbounded rays"
    )
    criterion_tail_points: int = Field(
        default=200, description="Points of the log-spaced tail grid"
    )

    # Sweeps
    sweep_max_points: int = Field(default=1_000_000)
    sweep_workers: int = Field(default=4)

    # Output
    csv_digits: int = Field(default=17, description="Significant digits in CSV")

    @field_validator(
        "integration_step",
        "event_tolerance",
        "r_min",
        "comparison_grid_step",
        "slack_tolerance",
        "r_max_test",
        "criterion_tail_radius",
        "criterion_tail_points",
    )
    @classmethod
    def must_be_positive(cls, v: float) -> float:
        """Reject non-positive steps and tolerances."""
        if not v > 0:
            raise ValueError(f"must be positive, got {v}")
        return v

    @field_validator("log_format")
    @classmethod
    def known_log_format(cls, v: str) -> str:
        """Only the two structlog renderers are supported."""
        if v not in ("console", "json"):
            raise ValueError(f"log_format must be 'console' or 'json', got {v!r}")
        return v


# Global settings instance
settings = Settings()
