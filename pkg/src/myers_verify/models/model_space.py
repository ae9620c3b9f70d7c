"""Model space parameters."""

import math

from pydantic import BaseModel, ConfigDict, Field, field_validator


class ModelSpaceParams(BaseModel):
    """Simply connected space form of dimension ``n`` and curvature ``H``."""

    model_config = ConfigDict(frozen=True)

    n: int = Field(ge=2, description="Dimension")
    H: float = Field(description="Sectional curvature (1/length^2)")

    @field_validator("H")
    @classmethod
    def finite_curvature(cls, v: float) -> float:
        """Curvature must be a finite real."""
        if not math.isfinite(v):
            raise ValueError(f"H must be finite, got {v}")
        return v
