"""Warp profiles, weight functions and growth functions.

Each catalog kind carries analytic derivatives. Tabulated kinds interpolate
samples with a natural cubic spline; their second derivative is a central
difference of the spline's first derivative.
"""

import math
from abc import ABC, abstractmethod
from typing import Any, Dict

import numpy as np
import numpy.typing as npt
from scipy.interpolate import CubicSpline

from myers_verify.exceptions import DomainError, ParameterError
from myers_verify.services.model_space import (
    RealOrArray,
    conjugate_radius,
    sn,
    sn_prime,
)

# Step of the central difference used for tabulated second derivatives.
FD_STEP = 1e-4


def _out(x: Any) -> RealOrArray:
    arr = np.asarray(x, dtype=float)
    return float(arr) if arr.ndim == 0 else arr


def _check_samples(
    r: npt.ArrayLike, values: npt.ArrayLike
) -> tuple[np.ndarray, np.ndarray]:
    r = np.asarray(r, dtype=float)
    values = np.asarray(values, dtype=float)
    if r.ndim != 1 or r.shape != values.shape:
        raise ParameterError("samples must be two 1-d arrays of equal length")
    if r.size < 4:
        raise ParameterError(f"need at least 4 samples, got {r.size}")
    if not np.all(np.diff(r) > 0):
        raise ParameterError("sample radii must be strictly increasing")
    if not (np.all(np.isfinite(r)) and np.all(np.isfinite(values))):
        raise ParameterError("samples must be finite")
    return r, values


class _SplineSamples:
    """Natural cubic spline through (r, value) samples."""

    def __init__(self, r: npt.ArrayLike, values: npt.ArrayLike):
        self.r, self.values = _check_samples(r, values)
        self.spline = CubicSpline(self.r, self.values, bc_type="natural")
        self.first = self.spline.derivative(1)

    def _inside(self, x: np.ndarray) -> None:
        if np.any(x < self.r[0]) or np.any(x > self.r[-1]):
            raise DomainError(
                f"tabulated data covers [{self.r[0]}, {self.r[-1]}], "
                f"got values in [{float(np.min(x))}, {float(np.max(x))}]"
            )

    def value(self, x: npt.ArrayLike) -> RealOrArray:
        x = np.asarray(x, dtype=float)
        self._inside(x)
        return _out(self.spline(x))

    def derivative(self, x: npt.ArrayLike) -> RealOrArray:
        x = np.asarray(x, dtype=float)
        self._inside(x)
        return _out(self.first(x))

    def second_derivative(self, x: npt.ArrayLike) -> RealOrArray:
        x = np.asarray(x, dtype=float)
        self._inside(x)
        lo = np.maximum(x - FD_STEP, self.r[0])
        hi = np.minimum(x + FD_STEP, self.r[-1])
        return _out((self.first(hi) - self.first(lo)) / (hi - lo))


# ---------------------------------------------------------------------------
# Warp profiles
# ---------------------------------------------------------------------------


class WarpProfile(ABC):
    """Warping function phi of g = dr^2 + phi(r)^2 g_{S^{n-1}}."""

    kind: str = "abstract"

    @property
    @abstractmethod
    def r_max(self) -> float:
        """Right end of the radial domain; the first zero of phi when finite."""

    @abstractmethod
    def phi(self, r: npt.ArrayLike) -> RealOrArray:
        """phi(r)."""

    @abstractmethod
    def phi_prime(self, r: npt.ArrayLike) -> RealOrArray:
        """phi'(r)."""

    @abstractmethod
    def phi_double_prime(self, r: npt.ArrayLike) -> RealOrArray:
        """phi''(r)."""

    def parameters(self) -> Dict[str, Any]:
        """Parameters echoed into reports."""
        return {"profile": self.kind}

    def __repr__(self) -> str:
        params = ", ".join(f"{k}={v}" for k, v in self.parameters().items())
        return f"<{type(self).__name__}({params})>"


class SpaceFormProfile(WarpProfile):
    """phi = sn_H: the model space of constant curvature H."""

    kind = "space_form"

    def __init__(self, H: float):
        if not math.isfinite(H):
            raise ParameterError(f"H must be finite, got {H}")
        self.H = H

    @property
    def r_max(self) -> float:
        return conjugate_radius(self.H)

    def phi(self, r: npt.ArrayLike) -> RealOrArray:
        return sn(self.H, r)

    def phi_prime(self, r: npt.ArrayLike) -> RealOrArray:
        return sn_prime(self.H, r)

    def phi_double_prime(self, r: npt.ArrayLike) -> RealOrArray:
        return _out(-self.H * np.asarray(sn(self.H, r)))

    def parameters(self) -> Dict[str, Any]:
        return {"profile": self.kind, "H": self.H}


class PerturbedSineProfile(WarpProfile):
    """phi = sin r (1 + beta sin^2 r) on (0, pi), |beta| < 0.2."""

    kind = "perturbed_sine"

    def __init__(self, beta: float):
        if not -0.2 < beta < 0.2:
            raise ParameterError(
                f"perturbed_sine needs beta in (-0.2, 0.2), got {beta}"
            )
        self.beta = beta

    @property
    def r_max(self) -> float:
        return math.pi

    def phi(self, r: npt.ArrayLike) -> RealOrArray:
        s = np.sin(np.asarray(r, dtype=float))
        return _out(s + self.beta * s**3)

    def phi_prime(self, r: npt.ArrayLike) -> RealOrArray:
        r = np.asarray(r, dtype=float)
        s, c = np.sin(r), np.cos(r)
        return _out(c + 3.0 * self.beta * s * s * c)

    def phi_double_prime(self, r: npt.ArrayLike) -> RealOrArray:
        r = np.asarray(r, dtype=float)
        s, c = np.sin(r), np.cos(r)
        return _out(-s + self.beta * (6.0 * s * c * c - 3.0 * s**3))

    def parameters(self) -> Dict[str, Any]:
        return {"profile": self.kind, "beta": self.beta}


class PerturbedLinearProfile(WarpProfile):
    """phi = r (1 + beta r^2 e^{-r}) on (0, inf)."""

    kind = "perturbed_linear"

    # max of r^2 e^{-r} is 4/e^2; phi stays positive while beta > -e^2/4.
    BETA_FLOOR = -math.e**2 / 4.0

    def __init__(self, beta: float):
        if not beta > self.BETA_FLOOR:
            raise ParameterError(
                f"perturbed_linear needs beta > {self.BETA_FLOOR:.4f}, got {beta}"
            )
        self.beta = beta

    @property
    def r_max(self) -> float:
        return math.inf

    def phi(self, r: npt.ArrayLike) -> RealOrArray:
        r = np.asarray(r, dtype=float)
        return _out(r + self.beta * r**3 * np.exp(-r))

    def phi_prime(self, r: npt.ArrayLike) -> RealOrArray:
        r = np.asarray(r, dtype=float)
        return _out(1.0 + self.beta * (3.0 * r**2 - r**3) * np.exp(-r))

    def phi_double_prime(self, r: npt.ArrayLike) -> RealOrArray:
        r = np.asarray(r, dtype=float)
        return _out(self.beta * (6.0 * r - 6.0 * r**2 + r**3) * np.exp(-r))

    def parameters(self) -> Dict[str, Any]:
        return {"profile": self.kind, "beta": self.beta}


class TabulatedProfile(WarpProfile):
    """Spline through sampled (r, phi) with r[0] = 0 and phi(0) = 0."""

    kind = "tabulated"

    def __init__(self, r: npt.ArrayLike, values: npt.ArrayLike, source: str = ""):
        self.samples = _SplineSamples(r, values)
        self.source = source
        if self.samples.r[0] != 0.0 or abs(self.samples.values[0]) > 1e-12:
            raise ParameterError("tabulated profile must start at the pole: r=0, phi=0")
        if np.any(self.samples.values[1:] <= 0):
            raise ParameterError(
                "tabulated profile must be positive away from the pole"
            )

    @property
    def r_max(self) -> float:
        return float(self.samples.r[-1])

    def phi(self, r: npt.ArrayLike) -> RealOrArray:
        return self.samples.value(r)

    def phi_prime(self, r: npt.ArrayLike) -> RealOrArray:
        return self.samples.derivative(r)

    def phi_double_prime(self, r: npt.ArrayLike) -> RealOrArray:
        return self.samples.second_derivative(r)

    def parameters(self) -> Dict[str, Any]:
        return {"profile": self.kind, "source": self.source}


# ---------------------------------------------------------------------------
# Weight functions
# ---------------------------------------------------------------------------


class WeightFunction(ABC):
    """Radial weight f of the measure e^{-f} dv."""

    kind: str = "abstract"

    # Left end of the radii where the evaluators are meaningful.
    domain_start: float = 0.0

    @property
    def r_max(self) -> float:
        return math.inf

    @abstractmethod
    def f(self, r: npt.ArrayLike) -> RealOrArray:
        """f(r)."""

    @abstractmethod
    def f_prime(self, r: npt.ArrayLike) -> RealOrArray:
        """f'(r) = <grad f, d/dr>."""

    @abstractmethod
    def f_double_prime(self, r: npt.ArrayLike) -> RealOrArray:
        """f''(r) = Hess f(d/dr, d/dr)."""

    def parameters(self) -> Dict[str, Any]:
        return {"weight": self.kind}

    def __repr__(self) -> str:
        params = ", ".join(f"{k}={v}" for k, v in self.parameters().items())
        return f"<{type(self).__name__}({params})>"


class ZeroWeight(WeightFunction):
    kind = "zero"

    def f(self, r: npt.ArrayLike) -> RealOrArray:
        return _out(np.zeros_like(np.asarray(r, dtype=float)))

    f_prime = f
    f_double_prime = f


class LinearWeight(WeightFunction):
    """f = delta r, so |f| <= delta (r + 1)."""

    kind = "linear"

    def __init__(self, delta: float):
        self.delta = delta

    def f(self, r: npt.ArrayLike) -> RealOrArray:
        return _out(self.delta * np.asarray(r, dtype=float))

    def f_prime(self, r: npt.ArrayLike) -> RealOrArray:
        return _out(np.full_like(np.asarray(r, dtype=float), self.delta))

    def f_double_prime(self, r: npt.ArrayLike) -> RealOrArray:
        return _out(np.zeros_like(np.asarray(r, dtype=float)))

    def parameters(self) -> Dict[str, Any]:
        return {"weight": self.kind, "weight_scale": self.delta}


class BoundedSineWeight(WeightFunction):
    """f = delta sin r."""

    kind = "bounded_sine"

    def __init__(self, delta: float):
        self.delta = delta

    def f(self, r: npt.ArrayLike) -> RealOrArray:
        return _out(self.delta * np.sin(np.asarray(r, dtype=float)))

    def f_prime(self, r: npt.ArrayLike) -> RealOrArray:
        return _out(self.delta * np.cos(np.asarray(r, dtype=float)))

    def f_double_prime(self, r: npt.ArrayLike) -> RealOrArray:
        return _out(-self.delta * np.sin(np.asarray(r, dtype=float)))

    def parameters(self) -> Dict[str, Any]:
        return {"weight": self.kind, "weight_scale": self.delta}


class LogGrowthWeight(WeightFunction):
    """f = c log(1 + r)."""

    kind = "log_growth"

    def __init__(self, c: float):
        self.c = c

    def f(self, r: npt.ArrayLike) -> RealOrArray:
        return _out(self.c * np.log1p(np.asarray(r, dtype=float)))

    def f_prime(self, r: npt.ArrayLike) -> RealOrArray:
        return _out(self.c / (1.0 + np.asarray(r, dtype=float)))

    def f_double_prime(self, r: npt.ArrayLike) -> RealOrArray:
        return _out(-self.c / (1.0 + np.asarray(r, dtype=float)) ** 2)

    def parameters(self) -> Dict[str, Any]:
        return {"weight": self.kind, "weight_scale": self.c}


class SaturatingLinearWeight(WeightFunction):
    """f' = c (1 - e^{-r}), f(0) = 0."""

    kind = "saturating_linear"

    def __init__(self, c: float):
        self.c = c

    def f(self, r: npt.ArrayLike) -> RealOrArray:
        r = np.asarray(r, dtype=float)
        return _out(self.c * (r + np.expm1(-r)))

    def f_prime(self, r: npt.ArrayLike) -> RealOrArray:
        return _out(-self.c * np.expm1(-np.asarray(r, dtype=float)))

    def f_double_prime(self, r: npt.ArrayLike) -> RealOrArray:
        return _out(self.c * np.exp(-np.asarray(r, dtype=float)))

    def parameters(self) -> Dict[str, Any]:
        return {"weight": self.kind, "weight_scale": self.c}


class PowerSaturatingWeight(WeightFunction):
    """f' = C (1 - t^{-alpha}) for t > 0.

    Singular at the pole; meant for growth-condition checks on t >= 1.
    """

    kind = "power_saturating"
    domain_start = 1.0

    def __init__(self, C: float, alpha: float):
        if not alpha > 0:
            raise ParameterError(f"power_saturating needs alpha > 0, got {alpha}")
        self.C = C
        self.alpha = alpha

    def _positive(self, r: npt.ArrayLike) -> np.ndarray:
        r = np.asarray(r, dtype=float)
        if np.any(r <= 0):
            raise DomainError(f"{self.kind} weight is defined for r > 0")
        return r

    def f(self, r: npt.ArrayLike) -> RealOrArray:
        r = self._positive(r)
        if self.alpha == 1.0:
            return _out(self.C * (r - np.log(r)))
        return _out(self.C * (r + r ** (1.0 - self.alpha) / (self.alpha - 1.0)))

    def f_prime(self, r: npt.ArrayLike) -> RealOrArray:
        r = self._positive(r)
        return _out(self.C * (1.0 - r ** (-self.alpha)))

    def f_double_prime(self, r: npt.ArrayLike) -> RealOrArray:
        r = self._positive(r)
        return _out(self.C * self.alpha * r ** (-self.alpha - 1.0))

    def parameters(self) -> Dict[str, Any]:
        return {"weight": self.kind, "weight_scale": self.C, "weight_alpha": self.alpha}


class TabulatedWeight(WeightFunction):
    """Spline through sampled (r, f) starting at r = 0."""

    kind = "tabulated"

    def __init__(self, r: npt.ArrayLike, values: npt.ArrayLike, source: str = ""):
        self.samples = _SplineSamples(r, values)
        self.source = source
        if self.samples.r[0] != 0.0:
            raise ParameterError("tabulated weight must start at r = 0")

    @property
    def r_max(self) -> float:
        return float(self.samples.r[-1])

    def f(self, r: npt.ArrayLike) -> RealOrArray:
        return self.samples.value(r)

    def f_prime(self, r: npt.ArrayLike) -> RealOrArray:
        return self.samples.derivative(r)

    def f_double_prime(self, r: npt.ArrayLike) -> RealOrArray:
        return self.samples.second_derivative(r)

    def parameters(self) -> Dict[str, Any]:
        return {"weight": self.kind, "source": self.source}


# ---------------------------------------------------------------------------
# Growth functions
# ---------------------------------------------------------------------------


class GrowthFunction(ABC):
    """Positive function h of the compactness criteria."""

    kind: str = "abstract"

    @abstractmethod
    def h(self, r: npt.ArrayLike) -> RealOrArray:
        """h(r) > 0."""

    def analytic_tail(self, eps: float) -> float | None:
        """Closed form of the tail integral from eps, or None if unknown."""
        return None

    def parameters(self) -> Dict[str, Any]:
        return {"growth": self.kind}


class ConstantGrowth(GrowthFunction):
    """h = c; the tail integral diverges."""

    kind = "constant"

    def __init__(self, c: float = 1.0):
        if not c > 0:
            raise ParameterError(f"constant growth needs c > 0, got {c}")
        self.c = c

    def h(self, r: npt.ArrayLike) -> RealOrArray:
        return _out(np.full_like(np.asarray(r, dtype=float), self.c))

    def analytic_tail(self, eps: float) -> float | None:
        return math.inf

    def parameters(self) -> Dict[str, Any]:
        return {"growth": self.kind, "growth_c": self.c}


class PowerLawGrowth(GrowthFunction):
    """h = (r0 + r)^{-b}."""

    kind = "power_law"

    def __init__(self, b: float, r0: float):
        if not r0 > 0:
            raise ParameterError(f"power law growth needs r0 > 0, got {r0}")
        self.b = b
        self.r0 = r0

    def h(self, r: npt.ArrayLike) -> RealOrArray:
        return _out((self.r0 + np.asarray(r, dtype=float)) ** (-self.b))

    def analytic_tail(self, eps: float) -> float | None:
        if self.b <= 1:
            return math.inf
        return (self.r0 + eps) ** (1.0 - self.b) / (self.b - 1.0)

    def parameters(self) -> Dict[str, Any]:
        return {"growth": self.kind, "b": self.b, "r0": self.r0}


class TabulatedGrowth(GrowthFunction):
    """Spline through sampled (r, h) extended past the last knot by a power law.

    The tail exponent p comes from the log-log slope of the last two samples,
    h(s) = h(R) (R/s)^p for s > R.
    """

    kind = "tabulated"

    def __init__(self, r: npt.ArrayLike, values: npt.ArrayLike, source: str = ""):
        self.samples = _SplineSamples(r, values)
        self.source = source
        if np.any(self.samples.values <= 0):
            raise ParameterError("tabulated growth must be positive")
        r_knots, h_knots = self.samples.r, self.samples.values
        if r_knots[-2] > 0:
            self.tail_exponent = -math.log(h_knots[-1] / h_knots[-2]) / math.log(
                r_knots[-1] / r_knots[-2]
            )
        else:
            self.tail_exponent = 0.0

    @property
    def r_last(self) -> float:
        return float(self.samples.r[-1])

    def h(self, r: npt.ArrayLike) -> RealOrArray:
        r = np.asarray(r, dtype=float)
        R, hR = self.r_last, float(self.samples.values[-1])
        inside = np.clip(r, self.samples.r[0], R)
        head = np.asarray(self.samples.spline(inside), dtype=float)
        tail = hR * (R / np.maximum(r, R)) ** self.tail_exponent
        return _out(np.where(r <= R, head, tail))

    def tail_beyond(self, start: float) -> float:
        """Integral of the power-law extension from ``start`` >= R to infinity."""
        p = self.tail_exponent
        if p <= 1:
            return math.inf
        R, hR = self.r_last, float(self.samples.values[-1])
        return hR * R**p * start ** (1.0 - p) / (p - 1.0)

    def parameters(self) -> Dict[str, Any]:
        return {"growth": self.kind, "source": self.source}


class InverseSquareGrowth(GrowthFunction):
    """h = 1/r^2, the profile of the inverse-square criterion (r > 0)."""

    kind = "inverse_square"

    def h(self, r: npt.ArrayLike) -> RealOrArray:
        r = np.asarray(r, dtype=float)
        if np.any(r <= 0):
            raise DomainError("inverse-square growth is defined for r > 0")
        return _out(1.0 / (r * r))

    def analytic_tail(self, eps: float) -> float | None:
        return 1.0 / eps
