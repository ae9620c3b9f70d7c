"""Rotationally symmetric smooth metric measure spaces."""

import math
from typing import Any, Dict, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from myers_verify.models.profiles import WarpProfile, WeightFunction, ZeroWeight


class RadialManifold(BaseModel):
    """M = [0, r_max) x S^{n-1} with g = dr^2 + phi^2 g_S and measure e^{-f} dv.

    ``known_compact`` is catalog ground truth (None for user-supplied data).
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    name: str = "custom"
    n: int = Field(ge=2, description="Dimension")
    profile: WarpProfile
    weight: WeightFunction = Field(default_factory=ZeroWeight)
    known_compact: Optional[bool] = None

    @model_validator(mode="after")
    def common_domain(self) -> "RadialManifold":
        """The weight must be defined wherever the profile is."""
        if self.weight.r_max < self.profile.r_max:
            raise ValueError(
                f"weight covers [0, {self.weight.r_max}] but the profile "
                f"needs [0, {self.profile.r_max})"
            )
        return self

    @property
    def r_dom(self) -> float:
        """First zero of phi past the pole (infinite for unbounded rays)."""
        return self.profile.r_max

    @property
    def is_bounded(self) -> bool:
        return math.isfinite(self.r_dom)

    def parameters(self) -> Dict[str, Any]:
        """Flat parameter echo used by reports and CSV rows."""
        return {
            "manifold": self.name,
            "n": self.n,
            **self.profile.parameters(),
            **self.weight.parameters(),
        }
