"""Integration of the comparison ODE in Jacobi form.

The Riccati equation m' = -m^2/n_eff - ric(t) becomes the linear equation
u'' + (ric(t)/n_eff) u = 0 under m = n_eff u'/u. Integration runs on u with
a fixed-step classical Runge-Kutta scheme; the first zero of u (a conjugate
point from the pole, or a finite-time blow-up m -> -inf from interior data)
is refined by bisection on the one-step map.
"""

import math
from typing import Callable, List, Optional

import structlog

from myers_verify.exceptions import IntegrationError, ParameterError
from myers_verify.models.trajectory import RiccatiTrajectory, TrajectorySample
from myers_verify.services.model_space import RealOrArray, mean_curvature
from myers_verify.settings import settings

logger = structlog.get_logger(__name__)

RicciInput = Callable[[float], float]


def _ric(ric: RicciInput, t: float) -> float:
    value = float(ric(t))
    if not math.isfinite(value):
        raise IntegrationError(f"Ricci input is not finite at t = {t}: {value}")
    return value


def _rk4_step(
    ric: RicciInput, n_eff: float, t: float, u: float, v: float, h: float
) -> tuple[float, float]:
    """One RK4 step of (u, v)' = (v, -(ric/n_eff) u)."""

    def accel(tt: float, uu: float) -> float:
        return -_ric(ric, tt) / n_eff * uu

    k1u, k1v = v, accel(t, u)
    k2u, k2v = v + 0.5 * h * k1v, accel(t + 0.5 * h, u + 0.5 * h * k1u)
    k3u, k3v = v + 0.5 * h * k2v, accel(t + 0.5 * h, u + 0.5 * h * k2u)
    k4u, k4v = v + h * k3v, accel(t + h, u + h * k3u)
    u_next = u + h / 6.0 * (k1u + 2 * k2u + 2 * k3u + k4u)
    v_next = v + h / 6.0 * (k1v + 2 * k2v + 2 * k3v + k4v)
    return u_next, v_next


def _refine_zero(
    ric: RicciInput,
    n_eff: float,
    t: float,
    u: float,
    v: float,
    h: float,
    tol: float,
) -> float:
    """Bisect on the sub-step length until the zero of u is bracketed to ``tol``."""
    lo, hi = 0.0, h
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        u_mid, _ = _rk4_step(ric, n_eff, t, u, v, mid)
        if u_mid > 0:
            lo = mid
        else:
            hi = mid
    return t + 0.5 * (lo + hi)


def _integrate(
    ric: RicciInput,
    n_eff: float,
    t0: float,
    u0: float,
    v0: float,
    t_max: float,
    step: float,
    record_start: bool,
) -> tuple[List[TrajectorySample], Optional[float]]:
    if not n_eff > 0:
        raise ParameterError(f"n_eff must be > 0, got {n_eff}")
    if not step > 0:
        raise ParameterError(f"step must be > 0, got {step}")
    if step >= t_max - t0:
        raise ParameterError(
            f"step {step} must be smaller than the interval length {t_max - t0}"
        )

    samples: List[TrajectorySample] = []
    if record_start:
        samples.append(TrajectorySample(t=t0, u=u0, u_prime=v0, m=n_eff * v0 / u0))

    n_steps = int(math.ceil((t_max - t0) / step - 1e-9))
    t, u, v = t0, u0, v0
    for i in range(n_steps):
        h = min(step, t_max - t)
        u_next, v_next = _rk4_step(ric, n_eff, t, u, v, h)
        if not (math.isfinite(u_next) and math.isfinite(v_next)):
            raise IntegrationError(f"solution left the finite range near t = {t}")
        if u_next <= 0:
            zero = _refine_zero(ric, n_eff, t, u, v, h, settings.event_tolerance)
            return samples, zero
        t = t0 + (i + 1) * step if i + 1 < n_steps else t_max
        u, v = u_next, v_next
        samples.append(TrajectorySample(t=t, u=u, u_prime=v, m=n_eff * v / u))
    return samples, None


def integrate_jacobi(
    ric: RicciInput,
    n_eff: float,
    t_max: float,
    step: float | None = None,
) -> RiccatiTrajectory:
    """Integrate u'' + (ric/n_eff) u = 0 from the pole with u(0)=0, u'(0)=1.

    The pole itself is not sampled (m is singular there). ``conjugate_time``
    is the first zero of u in (0, t_max], refined to the event tolerance.

    Args:
        ric: Ricci input along the geodesic.
        n_eff: Effective dimension term (n-1, or n+k-1).
        t_max: Right end of the integration.
        step: RK4 step; defaults to ``settings.integration_step``.

    Raises:
        ParameterError: If step >= t_max or n_eff <= 0.
        IntegrationError: If ric returns a non-finite value.
    """
    step = step or settings.integration_step
    samples, zero = _integrate(
        ric, n_eff, 0.0, 0.0, 1.0, t_max, step, record_start=False
    )
    logger.debug(
        "jacobi.integrated",
        n_eff=n_eff,
        t_max=t_max,
        step=step,
        samples=len(samples),
        conjugate_time=zero,
    )
    return RiccatiTrajectory(
        n_eff=n_eff,
        t0=0.0,
        t_max=t_max,
        step=step,
        samples=samples,
        conjugate_time=zero,
    )


def integrate_riccati_from(
    m0: float,
    t0: float,
    ric: RicciInput,
    n_eff: float,
    t_max: float,
    step: float | None = None,
) -> RiccatiTrajectory:
    """Integrate the Riccati equation from interior data m(t0) = m0.

    Uses u(t0) = 1, u'(t0) = m0/n_eff; ``blowup_time`` is the first zero of u
    after t0, where m -> -inf.
    """
    if not t0 > 0:
        raise ParameterError(f"t0 must be > 0, got {t0}")
    if not math.isfinite(m0):
        raise ParameterError(f"m0 must be finite, got {m0}")
    if not t0 < t_max:
        raise ParameterError(f"t0 = {t0} must be smaller than t_max = {t_max}")
    step = step or settings.integration_step
    samples, zero = _integrate(
        ric, n_eff, t0, 1.0, m0 / n_eff, t_max, step, record_start=True
    )
    logger.debug(
        "riccati.integrated", m0=m0, t0=t0, n_eff=n_eff, blowup_time=zero
    )
    return RiccatiTrajectory(
        n_eff=n_eff, t0=t0, t_max=t_max, step=step, samples=samples, blowup_time=zero
    )


def constant_ric_oracle(H: float, n: int, t: float) -> RealOrArray:
    """Closed-form m_H(t), the solution for ric = (n-1) H and n_eff = n-1."""
    return mean_curvature(n, H, t)


def constant_ric(value: float) -> RicciInput:
    """Constant Ricci input."""
    return lambda t: value
