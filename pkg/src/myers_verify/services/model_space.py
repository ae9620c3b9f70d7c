"""Closed-form model space quantities: sn_H, sn_H', m_H and validity windows."""

from __future__ import annotations

import math
from enum import Enum
from typing import TYPE_CHECKING

import numpy as np
import numpy.typing as npt

from myers_verify.exceptions import DomainError

if TYPE_CHECKING:
    # models.profiles imports this module
    from myers_verify.models.model_space import ModelSpaceParams

# Below this value of |H| t^2 the H = 0 series is used.
SMALL_CURVATURE = 1e-12

RealOrArray = float | npt.NDArray[np.float64]


class RangeVariant(str, Enum):
    """Which window ``valid_range`` reports."""

    THM21 = "thm21"
    THM22 = "thm22"
    CONJUGATE = "conjugate"


def _out(x: npt.NDArray[np.float64]) -> RealOrArray:
    return float(x) if x.ndim == 0 else x


def sn(H: float, t: npt.ArrayLike) -> RealOrArray:
    """sn_H(t) for a bare curvature value."""
    t = np.asarray(t, dtype=float)
    series = t * (1.0 - H * t * t / 6.0 + H * H * t**4 / 120.0)
    if H > 0:
        s = math.sqrt(H)
        closed = np.sin(s * t) / s
    elif H < 0:
        s = math.sqrt(-H)
        closed = np.sinh(s * t) / s
    else:
        return _out(t.copy())
    return _out(np.where(abs(H) * t * t < SMALL_CURVATURE, series, closed))


def sn_prime(H: float, t: npt.ArrayLike) -> RealOrArray:
    """sn_H'(t) for a bare curvature value."""
    t = np.asarray(t, dtype=float)
    series = 1.0 - H * t * t / 2.0 + H * H * t**4 / 24.0
    if H > 0:
        closed = np.cos(math.sqrt(H) * t)
    elif H < 0:
        closed = np.cosh(math.sqrt(-H) * t)
    else:
        return _out(np.ones_like(t))
    return _out(np.where(abs(H) * t * t < SMALL_CURVATURE, series, closed))


def conjugate_radius(H: float) -> float:
    """First positive zero of sn_H (infinite when H <= 0)."""
    return math.pi / math.sqrt(H) if H > 0 else math.inf


def sn_h(params: ModelSpaceParams, t: npt.ArrayLike) -> RealOrArray:
    """Solution of sn'' + H sn = 0 with sn(0) = 0, sn'(0) = 1.

    Args:
        params: Model space; only ``H`` is used.
        t: Non-negative radius (scalar or array).

    Returns:
        sin(sqrt(H) t)/sqrt(H), t or sinh(sqrt(-H) t)/sqrt(-H) by the sign of H.
    """
    if np.any(np.asarray(t) < 0):
        raise DomainError(f"sn_H requires t >= 0, got {t}")
    return sn(params.H, t)


def sn_h_prime(params: ModelSpaceParams, t: npt.ArrayLike) -> RealOrArray:
    """Derivative of ``sn_h`` in t."""
    if np.any(np.asarray(t) < 0):
        raise DomainError(f"sn_H' requires t >= 0, got {t}")
    return sn_prime(params.H, t)


def mean_curvature(n: int, H: float, t: npt.ArrayLike) -> RealOrArray:
    """m_H(t) = (n-1) sn_H'(t) / sn_H(t) for bare (n, H)."""
    t = np.asarray(t, dtype=float)
    if np.any(t <= 0):
        raise DomainError(f"m_H requires t > 0, got min t = {float(np.min(t))}")
    radius = conjugate_radius(H)
    if np.any(t >= radius):
        raise DomainError(
            f"m_H requires t < pi/sqrt(H) = {radius} for H = {H}, "
            f"got max t = {float(np.max(t))}"
        )
    series = (n - 1) / t * (1.0 - H * t * t / 3.0)
    if H > 0:
        s = math.sqrt(H)
        closed = (n - 1) * s / np.tan(s * t)
    elif H < 0:
        s = math.sqrt(-H)
        closed = (n - 1) * s / np.tanh(s * t)
    else:
        return _out((n - 1) / t)
    return _out(np.where(abs(H) * t * t < SMALL_CURVATURE, series, closed))


def m_h(params: ModelSpaceParams, t: npt.ArrayLike) -> RealOrArray:
    """Mean curvature of geodesic spheres in the model space.

    Raises:
        DomainError: If t <= 0, or t >= pi/sqrt(H) when H > 0.
    """
    return mean_curvature(params.n, params.H, t)


def m_h_effective(n: int, delta: float, H: float, t: npt.ArrayLike) -> RealOrArray:
    """Scaled bound m_H(t) (1 + 4 delta (t+1) / (n-1)).

    This is the mean curvature of the model space of effective dimension
    n + 4 delta (t+1); the non-integer dimension is never formed.
    """
    if delta < 0:
        raise DomainError(f"delta must be >= 0, got {delta}")
    base = mean_curvature(n, H, t)
    if delta == 0:
        return base
    t = np.asarray(t, dtype=float)
    return _out(np.asarray(base) * (1.0 + 4.0 * delta * (t + 1.0) / (n - 1)))


def valid_range(H: float, variant: RangeVariant | str) -> float:
    """Right end of the hypothesis window of a comparison statement.

    Returns +inf for H <= 0; otherwise pi/(4 sqrt H), pi/(2 sqrt H) or
    pi/sqrt H for ``thm21``, ``thm22`` and ``conjugate``.
    """
    variant = RangeVariant(variant)
    if H <= 0:
        return math.inf
    divisor = {
        RangeVariant.THM21: 4.0,
        RangeVariant.THM22: 2.0,
        RangeVariant.CONJUGATE: 1.0,
    }[variant]
    return math.pi / (divisor * math.sqrt(H))
