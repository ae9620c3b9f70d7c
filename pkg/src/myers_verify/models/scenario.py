"""Scenario: one fully specified verification run."""

from enum import Enum
from typing import Any, Dict, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from myers_verify.models.criterion import (
    C3Convention,
    CriterionParams,
    CriterionVariant,
)


class Workflow(str, Enum):
    COMPARE = "compare"
    CONSTANTS = "constants"
    CRITERION = "criterion"
    AMBROSE = "ambrose"


class CompareVariant(str, Enum):
    THM21 = "thm21"
    THM22 = "thm22"
    MF_BOUNDS = "mf-bounds"
    MF_BOUNDS_K = "mf-bounds-k"
    MF_BOUNDS_A = "mf-bounds-a"
    IBP_CHAIN = "ibp-chain"
    INTEGRATED_RICCATI = "integrated-riccati"


class ManifoldName(str, Enum):
    SPHERE = "sphere"
    EUCLIDEAN = "euclidean"
    HYPERBOLIC = "hyperbolic"
    SPACE_FORM = "space_form"
    PERTURBED_SINE = "perturbed_sine"
    PERTURBED_LINEAR = "perturbed_linear"
    TABULATED = "tabulated"


class WeightName(str, Enum):
    ZERO = "zero"
    LINEAR = "linear"
    BOUNDED_SINE = "bounded_sine"
    LOG_GROWTH = "log_growth"
    SATURATING_LINEAR = "saturating_linear"
    POWER_SATURATING = "power_saturating"
    TABULATED = "tabulated"


class GrowthName(str, Enum):
    CONSTANT = "constant"
    POWER_LAW = "power_law"
    TABULATED = "tabulated"


_COMPARE_REQUIRED = {
    CompareVariant.THM21: ("delta", "H"),
    CompareVariant.THM22: ("a", "H"),
    CompareVariant.MF_BOUNDS: ("delta",),
    CompareVariant.MF_BOUNDS_K: ("k",),
    CompareVariant.MF_BOUNDS_A: ("a",),
    CompareVariant.IBP_CHAIN: ("delta", "H", "t"),
    CompareVariant.INTEGRATED_RICCATI: ("t",),
}


class Scenario(BaseModel):
    """Flat scenario record parsed from a ``key = value`` file.

    Unknown keys are rejected. Field order is the column order of the
    parameter echo in CSV output.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    workflow: Workflow = Workflow.COMPARE
    variant: Optional[str] = None

    # manifold
    manifold: ManifoldName = ManifoldName.SPHERE
    n: int = Field(default=3, ge=2)
    curvature: Optional[float] = None
    beta: Optional[float] = None
    profile_file: Optional[str] = None
    weight: WeightName = WeightName.ZERO
    weight_scale: Optional[float] = None
    weight_alpha: Optional[float] = None
    weight_file: Optional[str] = None
    known_compact: Optional[bool] = None

    # variant parameters
    H: Optional[float] = None
    delta: Optional[float] = None
    a: Optional[float] = None
    k: Optional[float] = None
    b: Optional[float] = None
    r0: Optional[float] = None
    nu: Optional[float] = None
    delta1: Optional[float] = None
    eps: float = Field(default=1.0, gt=0)
    eps1: float = Field(default=1e-2, gt=0)
    convention: C3Convention = C3Convention.PROOF
    growth: GrowthName = GrowthName.POWER_LAW
    growth_c: Optional[float] = None
    growth_file: Optional[str] = None
    C: Optional[float] = None
    alpha: Optional[float] = None
    t: Optional[float] = None
    t_probe: float = Field(default=20.0, gt=1)
    m0: Optional[float] = None
    t1: float = Field(default=1.0, ge=1)

    # grid controls
    grid_step: Optional[float] = Field(default=None, gt=0)
    r_max_test: Optional[float] = Field(default=None, gt=0)

    @model_validator(mode="after")
    def workflow_requirements(self) -> "Scenario":
        """Per-workflow required keys, checked before any computation."""
        wf = self.workflow
        if wf is Workflow.COMPARE:
            choices = [v.value for v in CompareVariant]
            if self.variant not in choices:
                raise ValueError(
                    f"compare needs variant in {choices}, got {self.variant}"
                )
            variant = CompareVariant(self.variant)
            missing = [
                f for f in _COMPARE_REQUIRED[variant] if getattr(self, f) is None
            ]
            if missing:
                raise ValueError(
                    f"variant {variant.value} requires {', '.join(missing)}"
                )
        elif wf in (Workflow.CONSTANTS, Workflow.CRITERION):
            choices = [v.value for v in CriterionVariant]
            if self.variant not in choices:
                raise ValueError(
                    f"{wf.value} needs variant in {choices}, got {self.variant}"
                )
        elif wf is Workflow.AMBROSE:
            missing = [f for f in ("C", "alpha") if getattr(self, f) is None]
            if missing:
                raise ValueError(f"ambrose requires {', '.join(missing)}")
        return self

    @property
    def compare_variant(self) -> CompareVariant:
        return CompareVariant(self.variant)

    def criterion_params(self) -> CriterionParams:
        """Criterion parameters; raises pydantic's ValidationError."""
        return CriterionParams(
            variant=CriterionVariant(self.variant),
            n=self.n,
            delta=self.delta,
            a=self.a,
            k=self.k,
            b=self.b,
            r0=self.r0,
            nu=self.nu,
            delta1=self.delta1,
            eps=self.eps,
            eps1=self.eps1,
            convention=self.convention,
        )

    def echo(self) -> Dict[str, Any]:
        """Every scenario field in declaration order, enums as plain values."""
        return self.model_dump(mode="json")
