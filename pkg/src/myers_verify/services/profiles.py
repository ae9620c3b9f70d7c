"""Catalog of profiles, weights and growth functions."""

from pathlib import Path
from typing import Any, Dict, Optional

from myers_verify.exceptions import ParameterError
from myers_verify.models.manifold import RadialManifold
from myers_verify.models.profiles import (
    BoundedSineWeight,
    ConstantGrowth,
    GrowthFunction,
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
from myers_verify.services.tabulated import load_samples


def _tabulated(cls: type, path: Optional[str]) -> Any:
    if not path:
        raise ParameterError(f"{cls.kind} needs a sample file")
    r, values = load_samples(path)
    return cls(r, values, source=str(path))


class ProfileFactory:
    """Factory for warp profiles by catalog name."""

    _profiles: Dict[str, type[WarpProfile]] = {
        "space_form": SpaceFormProfile,
        "perturbed_sine": PerturbedSineProfile,
        "perturbed_linear": PerturbedLinearProfile,
        "tabulated": TabulatedProfile,
    }

    @classmethod
    def get_profile(cls, name: str, **params: Any) -> WarpProfile:
        """Build a profile; ``tabulated`` takes ``path``."""
        if name not in cls._profiles:
            raise ParameterError(f"Unsupported profile: {name}")
        profile_class = cls._profiles[name]
        if profile_class is TabulatedProfile:
            return _tabulated(profile_class, params.get("path"))
        return profile_class(**params)

    @classmethod
    def register_profile(cls, name: str, profile_class: type[WarpProfile]) -> None:
        """Register a new profile kind."""
        cls._profiles[name] = profile_class


class WeightFactory:
    """Factory for weight functions by catalog name."""

    _weights: Dict[str, type[WeightFunction]] = {
        "zero": ZeroWeight,
        "linear": LinearWeight,
        "bounded_sine": BoundedSineWeight,
        "log_growth": LogGrowthWeight,
        "saturating_linear": SaturatingLinearWeight,
        "power_saturating": PowerSaturatingWeight,
        "tabulated": TabulatedWeight,
    }

    @classmethod
    def get_weight(
        cls,
        name: str,
        scale: Optional[float] = None,
        alpha: Optional[float] = None,
        path: Optional[str] = None,
    ) -> WeightFunction:
        """Build a weight; ``scale`` is delta, c or C depending on the kind."""
        if name not in cls._weights:
            raise ParameterError(f"Unsupported weight: {name}")
        weight_class = cls._weights[name]
        if weight_class is ZeroWeight:
            return ZeroWeight()
        if weight_class is TabulatedWeight:
            return _tabulated(weight_class, path)
        if scale is None:
            raise ParameterError(f"weight {name} needs weight_scale")
        if weight_class is PowerSaturatingWeight:
            if alpha is None:
                raise ParameterError("weight power_saturating needs weight_alpha")
            return PowerSaturatingWeight(scale, alpha)
        return weight_class(scale)  # type: ignore[call-arg]

    @classmethod
    def register_weight(cls, name: str, weight_class: type[WeightFunction]) -> None:
        """Register a new weight kind; it is built as ``weight_class(scale)``."""
        cls._weights[name] = weight_class


def get_growth(
    name: str,
    c: Optional[float] = None,
    b: Optional[float] = None,
    r0: Optional[float] = None,
    path: Optional[str] = None,
) -> GrowthFunction:
    """Build a growth function h by kind."""
    if name == "constant":
        return ConstantGrowth(1.0 if c is None else c)
    if name == "power_law":
        if b is None or r0 is None:
            raise ParameterError("power_law growth needs b and r0")
        return PowerLawGrowth(b, r0)
    if name == "tabulated":
        return _tabulated(TabulatedGrowth, path)
    raise ParameterError(f"Unsupported growth: {name}")


# ---------------------------------------------------------------------------
# Catalog manifolds
# ---------------------------------------------------------------------------


def sphere(n: int, weight: Optional[WeightFunction] = None) -> RadialManifold:
    """Round unit sphere, phi = sin r."""
    return RadialManifold(
        name="sphere",
        n=n,
        profile=SpaceFormProfile(1.0),
        weight=weight or ZeroWeight(),
        known_compact=True,
    )


def euclidean(n: int, weight: Optional[WeightFunction] = None) -> RadialManifold:
    """Flat space, phi = r."""
    return RadialManifold(
        name="euclidean",
        n=n,
        profile=SpaceFormProfile(0.0),
        weight=weight or ZeroWeight(),
        known_compact=False,
    )


def hyperbolic(n: int, weight: Optional[WeightFunction] = None) -> RadialManifold:
    """Hyperbolic space of curvature -1, phi = sinh r."""
    return RadialManifold(
        name="hyperbolic",
        n=n,
        profile=SpaceFormProfile(-1.0),
        weight=weight or ZeroWeight(),
        known_compact=False,
    )


def space_form(
    n: int, H: float, weight: Optional[WeightFunction] = None
) -> RadialManifold:
    """Model space of curvature H."""
    return RadialManifold(
        name="space_form",
        n=n,
        profile=SpaceFormProfile(H),
        weight=weight or ZeroWeight(),
        known_compact=H > 0,
    )


def perturbed_sine(
    n: int, beta: float, weight: Optional[WeightFunction] = None
) -> RadialManifold:
    """Closed non-space-form example, phi = sin r (1 + beta sin^2 r)."""
    return RadialManifold(
        name="perturbed_sine",
        n=n,
        profile=PerturbedSineProfile(beta),
        weight=weight or ZeroWeight(),
        known_compact=True,
    )


def perturbed_linear(
    n: int, beta: float, weight: Optional[WeightFunction] = None
) -> RadialManifold:
    """Open non-space-form example, phi = r (1 + beta r^2 e^{-r})."""
    return RadialManifold(
        name="perturbed_linear",
        n=n,
        profile=PerturbedLinearProfile(beta),
        weight=weight or ZeroWeight(),
        known_compact=False,
    )


def build_manifold(
    name: str,
    n: int,
    weight: Optional[WeightFunction] = None,
    H: Optional[float] = None,
    beta: Optional[float] = None,
    profile_file: Optional[str | Path] = None,
    known_compact: Optional[bool] = None,
) -> RadialManifold:
    """Build a catalog manifold by name; ``known_compact`` overrides ground truth."""
    if name in ("sphere", "euclidean", "hyperbolic"):
        builder = {"sphere": sphere, "euclidean": euclidean, "hyperbolic": hyperbolic}
        manifold = builder[name](n, weight)
    elif name == "space_form":
        if H is None:
            raise ParameterError("space_form needs curvature H")
        manifold = space_form(n, H, weight)
    elif name in ("perturbed_sine", "perturbed_linear"):
        if beta is None:
            raise ParameterError(f"{name} needs beta")
        manifold = (perturbed_sine if name == "perturbed_sine" else perturbed_linear)(
            n, beta, weight
        )
    elif name == "tabulated":
        profile = ProfileFactory.get_profile(
            "tabulated", path=str(profile_file) if profile_file else None
        )
        manifold = RadialManifold(
            name="tabulated", n=n, profile=profile, weight=weight or ZeroWeight()
        )
    else:
        raise ParameterError(f"Unsupported manifold: {name}")

    if known_compact is not None:
        manifold = manifold.model_copy(update={"known_compact": known_compact})
    return manifold


CATALOG_NAMES = (
    "sphere",
    "euclidean",
    "hyperbolic",
    "space_form",
    "perturbed_sine",
    "perturbed_linear",
    "tabulated",
)
