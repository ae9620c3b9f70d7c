"""Data models for Myers Verify."""

from .model_space import ModelSpaceParams
from .profiles import (
    BoundedSineWeight,
    ConstantGrowth,
    GrowthFunction,
    InverseSquareGrowth,
    LinearWeight,
    LogGrowthWeight,
    PerturbedLinearProfile,
    PerturbedSineProfile,
    PowerLawGrowth,
    PowerSaturatingWeight,
    SaturatingLinearWeight,
    SpaceFormProfile,
    TabulatedGrowth,
    TabulatedProfile,
    TabulatedWeight,
    WarpProfile,
    WeightFunction,
    ZeroWeight,
)
from .manifold import RadialManifold
from .trajectory import RiccatiTrajectory, TrajectorySample
from .reports import (
    AmbroseReport,
    BlowupSequenceReport,
    BlowupStatus,
    CompactnessVerdict,
    ComparisonReport,
    ComparisonStatus,
    ConstantReport,
    DivergenceTrend,
    GridPoint,
    IntegralProbe,
    SequenceTerm,
)
from .criterion import C3Convention, CriterionParams, CriterionVariant
from .scenario import CompareVariant, Scenario, Workflow

__all__ = [
    "ModelSpaceParams",
    "WarpProfile",
    "SpaceFormProfile",
    "PerturbedSineProfile",
    "PerturbedLinearProfile",
    "TabulatedProfile",
    "WeightFunction",
    "ZeroWeight",
    "LinearWeight",
    "BoundedSineWeight",
    "LogGrowthWeight",
    "SaturatingLinearWeight",
    "PowerSaturatingWeight",
    "TabulatedWeight",
    "GrowthFunction",
    "ConstantGrowth",
    "PowerLawGrowth",
    "TabulatedGrowth",
    "InverseSquareGrowth",
    "RadialManifold",
    "RiccatiTrajectory",
    "TrajectorySample",
    "ComparisonStatus",
    "GridPoint",
    "ComparisonReport",
    "CompactnessVerdict",
    "ConstantReport",
    "BlowupStatus",
    "SequenceTerm",
    "BlowupSequenceReport",
    "DivergenceTrend",
    "IntegralProbe",
    "AmbroseReport",
    "C3Convention",
    "CriterionParams",
    "CriterionVariant",
    "CompareVariant",
    "Scenario",
    "Workflow",
]
