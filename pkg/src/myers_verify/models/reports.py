"""Verification reports."""

from enum import Enum
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field


class ComparisonStatus(str, Enum):
    """Outcome of a grid check of a comparison statement."""

    HOLDS = "holds"
    HYPOTHESIS_VIOLATED = "hypothesis_violated"
    CONCLUSION_VIOLATED = "conclusion_violated"
    EMPTY_WINDOW = "empty_window"


class GridPoint(BaseModel):
    """One grid node: the compared quantity and its bound."""

    model_config = ConfigDict(frozen=True)

    t: float
    lhs: float
    rhs: float
    hypothesis_margin: float


class ComparisonReport(BaseModel):
    """Grid check of ``lhs(t) <= rhs(t)`` under a pointwise hypothesis.

    ``conclusion_slack`` is the raw minimum of rhs - lhs. ``judged_slack``
    divides each node's slack by max(1, |rhs|); the conclusion holds iff
    ``judged_slack >= -slack_tolerance``.
    """

    model_config = ConfigDict(frozen=True)

    statement: str
    hypothesis_slack: float
    conclusion_slack: float
    verdict: ComparisonStatus
    judged_slack: float = float("nan")
    lower_slack: Optional[float] = None
    window: tuple[float, float]
    grid: List[GridPoint] = Field(default_factory=list)
    parameters: Dict[str, Any] = Field(default_factory=dict)
    notes: List[str] = Field(default_factory=list)

    @property
    def holds(self) -> bool:
        return self.verdict is ComparisonStatus.HOLDS


class CompactnessVerdict(BaseModel):
    """Result of testing one compactness criterion on one manifold."""

    model_config = ConfigDict(frozen=True)

    variant: str
    constant_used: float
    branch: str
    min_margin: float
    hypothesis_margin: float
    criterion_met: bool
    predicted_compact: bool
    known_compact: Optional[bool]
    inconsistent: bool
    window: tuple[float, float]
    cross_check: Optional[float] = None
    parameters: Dict[str, Any] = Field(default_factory=dict)
    notes: List[str] = Field(default_factory=list)


class ConstantReport(BaseModel):
    """A compactness constant with the branch that produced it."""

    model_config = ConfigDict(frozen=True)

    variant: str
    value: float
    branch: str
    parameters: Dict[str, Any] = Field(default_factory=dict)
    optimized_epsilon: Optional[float] = None
    optimized_value: Optional[float] = None
    cross_check_delta: Optional[float] = None
    notes: List[str] = Field(default_factory=list)


class BlowupStatus(str, Enum):
    """Outcome of the doubling-sequence check."""

    BLOWUP = "blowup"
    CONTRADICTION = "contradiction"
    PRECONDITION_FAILED = "precondition_failed"
    TRUNCATED = "truncated"
    CLAIM_FAILED = "claim_failed"


class SequenceTerm(BaseModel):
    """Term l of t_{l+1} = t_l + 2^{1-l}: observed -m(t_l) against 2^l n."""

    model_config = ConfigDict(frozen=True)

    ell: int
    t: float
    lower_bound: float
    observed: float
    satisfied: bool


class BlowupSequenceReport(BaseModel):
    """Observational check of the doubling claim on a trajectory."""

    model_config = ConfigDict(frozen=True)

    t1: float
    T: float
    n: int
    status: BlowupStatus
    precondition_margin: float
    terms: List[SequenceTerm] = Field(default_factory=list)
    blowup_time: Optional[float] = None
    contradiction: bool = False
    notes: List[str] = Field(default_factory=list)


class DivergenceTrend(str, Enum):
    """Heuristic reading of a partial integral over doubling windows."""

    DIVERGING = "diverging-trend"
    CONVERGING = "converging-trend"
    INCONCLUSIVE = "inconclusive"


class IntegralProbe(BaseModel):
    model_config = ConfigDict(frozen=True)

    T: float
    integral: float


class AmbroseReport(BaseModel):
    """Bundle of the Ambrose-type hypotheses and the conjugate-point search."""

    model_config = ConfigDict(frozen=True)

    fprime_slack: float
    fprime_condition_holds: bool
    probes: List[IntegralProbe]
    trend: DivergenceTrend
    hypotheses_hold: bool
    conjugate_time: Optional[float]
    predicted_compact: bool
    known_compact: Optional[bool]
    inconsistent: bool
    parameters: Dict[str, Any] = Field(default_factory=dict)
    notes: List[str] = Field(default_factory=list)
