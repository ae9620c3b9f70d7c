"""Curvature of rotationally symmetric smooth metric measure spaces.

All quantities are evaluated along the radial geodesic from the pole, which
for a warped product with radial weight is where the comparison statements
live: Ric(d_r, d_r) = -(n-1) phi''/phi, m = (n-1) phi'/phi, and
Hess f(d_r, d_r) = f''.
"""

import math
from enum import Enum
from typing import Callable

import numpy as np
import numpy.typing as npt

from myers_verify.exceptions import DomainError, ParameterError
from myers_verify.models.manifold import RadialManifold
from myers_verify.services.model_space import RealOrArray
from myers_verify.settings import settings


class RicciKind(str, Enum):
    """Which radial Ricci quantity a ray evaluator returns."""

    PLAIN = "plain"
    F = "f"
    F_K = "f_k"


def _out(x: npt.ArrayLike) -> RealOrArray:
    arr = np.asarray(x, dtype=float)
    return float(arr) if arr.ndim == 0 else arr


def _radii(m: RadialManifold, r: npt.ArrayLike) -> np.ndarray:
    r = np.asarray(r, dtype=float)
    if np.any(r < settings.r_min) or np.any(r >= m.r_dom):
        raise DomainError(
            f"{m.name}: radius must lie in [{settings.r_min}, {m.r_dom}), "
            f"got [{float(np.min(r))}, {float(np.max(r))}]"
        )
    return r


def ricci_radial(m: RadialManifold, r: npt.ArrayLike) -> RealOrArray:
    """Ric(d_r, d_r) = -(n-1) phi''(r) / phi(r)."""
    r = _radii(m, r)
    phi = np.asarray(m.profile.phi(r))
    return _out(-(m.n - 1) * np.asarray(m.profile.phi_double_prime(r)) / phi)


def mean_curv(m: RadialManifold, r: npt.ArrayLike) -> RealOrArray:
    """Mean curvature of the geodesic sphere of radius r: (n-1) phi'/phi."""
    r = _radii(m, r)
    phi = np.asarray(m.profile.phi(r))
    return _out((m.n - 1) * np.asarray(m.profile.phi_prime(r)) / phi)


def m_f(m: RadialManifold, r: npt.ArrayLike) -> RealOrArray:
    """f-mean curvature m - d_r f."""
    return _out(np.asarray(mean_curv(m, r)) - np.asarray(m.weight.f_prime(r)))


def ric_f(m: RadialManifold, r: npt.ArrayLike) -> RealOrArray:
    """Bakry-Emery Ricci tensor Ric + Hess f on (d_r, d_r)."""
    return _out(np.asarray(ricci_radial(m, r)) + np.asarray(m.weight.f_double_prime(r)))


def ric_f_k(m: RadialManifold, k: float, r: npt.ArrayLike) -> RealOrArray:
    """k-Bakry-Emery Ricci tensor Ric + Hess f - df (x) df / k on (d_r, d_r).

    Raises:
        ParameterError: If k <= 0.
    """
    if not k > 0:
        raise ParameterError(f"k must be > 0, got {k}")
    fp = np.asarray(m.weight.f_prime(r))
    return _out(np.asarray(ric_f(m, r)) - fp * fp / k)


def ray_ricci(
    m: RadialManifold, kind: RicciKind | str = RicciKind.F, k: float | None = None
) -> Callable[[float], float]:
    """Scalar Ricci input along the ray, for the comparison ODE.

    The returned callable accepts any t >= 0. Radii below ``r_min`` (or the
    weight's domain start) and at or beyond the far pole are clamped into
    the evaluation domain; the radial curvature extends continuously there
    for smooth closed profiles.
    """
    kind = RicciKind(kind)
    if kind is RicciKind.F_K and (k is None or not k > 0):
        raise ParameterError(f"f_k Ricci input needs k > 0, got {k}")
    lo = settings.r_min
    if kind is not RicciKind.PLAIN:
        lo = max(lo, m.weight.domain_start)
    hi = m.r_dom * (1.0 - 1e-6) if math.isfinite(m.r_dom) else math.inf

    def evaluate(t: float) -> float:
        r = min(max(t, lo), hi)
        if kind is RicciKind.PLAIN:
            return float(ricci_radial(m, r))
        if kind is RicciKind.F:
            return float(ric_f(m, r))
        return float(ric_f_k(m, k, r))  # type: ignore[arg-type]

    return evaluate
