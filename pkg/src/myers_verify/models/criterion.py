"""Criterion parameters."""

from enum import Enum
from typing import Any, Dict, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator


class CriterionVariant(str, Enum):
    C1 = "C1"
    C2 = "C2"
    C3 = "C3"
    C4 = "C4"
    C5 = "C5"
    C6 = "C6"
    WAN = "Wan"
    QIU = "Qiu"
    CGT = "CGT"


# Variants whose growth function is (r0 + r)^{-b}.
POWER_LAW_VARIANTS = frozenset(
    {
        CriterionVariant.C2,
        CriterionVariant.C4,
        CriterionVariant.C6,
        CriterionVariant.WAN,
    }
)


class C3Convention(str, Enum):
    """Which printed form of C3 to use: ``a`` (statement) or ``2a`` (proof)."""

    STATEMENT = "statement"
    PROOF = "proof"


class CriterionParams(BaseModel):
    """Variant tag plus the free constants of its criterion.

    Only the parameters a variant reads need to be set; the validator checks
    those and leaves the rest alone.
    """

    model_config = ConfigDict(frozen=True)

    variant: CriterionVariant
    n: int = Field(ge=2)
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

    @model_validator(mode="after")
    def variant_requirements(self) -> "CriterionParams":
        v = self.variant
        required = {
            CriterionVariant.C1: ("delta",),
            CriterionVariant.C2: ("delta", "b", "r0"),
            CriterionVariant.C3: ("a",),
            CriterionVariant.C4: ("a", "b", "r0"),
            CriterionVariant.C5: ("k",),
            CriterionVariant.C6: ("k", "b", "r0"),
            CriterionVariant.WAN: ("b", "r0"),
            CriterionVariant.QIU: ("delta1",),
            CriterionVariant.CGT: ("nu", "r0"),
        }[v]
        missing = [name for name in required if getattr(self, name) is None]
        if missing:
            raise ValueError(f"variant {v.value} requires {', '.join(missing)}")
        if self.delta is not None and not self.delta > 0:
            raise ValueError(f"delta must be > 0, got {self.delta}")
        if self.a is not None and self.a < 0:
            raise ValueError(f"a must be >= 0, got {self.a}")
        if self.k is not None and not self.k > 0:
            raise ValueError(f"k must be > 0, got {self.k}")
        if self.r0 is not None and not self.r0 > 0:
            raise ValueError(f"r0 must be > 0, got {self.r0}")
        if v is CriterionVariant.CGT and not (self.nu or 0) > 0:
            raise ValueError(f"CGT requires nu > 0, got {self.nu}")
        if v is CriterionVariant.WAN and self.b is not None and self.b < 2:
            raise ValueError(f"Wan's constant requires b >= 2, got {self.b}")
        return self

    def echo(self) -> Dict[str, Any]:
        """Parameter echo for reports and CSV rows."""
        return self.model_dump(mode="json")
