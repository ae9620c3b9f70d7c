"""Ambrose-type compactness checks along a ray.

Divergence of the Ricci integral cannot be decided from finite data; it is
read off the growth of the partial integral over doubling windows and
labelled as a trend. The doubling-sequence argument for finite-time blow-up
of the mean curvature is checked against an integrated trajectory.
"""

import math
from typing import List, Optional

import numpy as np
import structlog
from scipy.integrate import trapezoid

from myers_verify.exceptions import DomainError, ParameterError
from myers_verify.models.manifold import RadialManifold
from myers_verify.models.profiles import WeightFunction
from myers_verify.models.reports import (
    AmbroseReport,
    BlowupSequenceReport,
    BlowupStatus,
    DivergenceTrend,
    IntegralProbe,
    SequenceTerm,
)
from myers_verify.models.trajectory import RiccatiTrajectory
from myers_verify.services.numerics import quad_silent
from myers_verify.services.radial_manifold import RicciKind, ray_ricci
from myers_verify.services.riccati_engine import integrate_jacobi
from myers_verify.settings import settings

logger = structlog.get_logger(__name__)

# Successive-increment ratio above which the partial integral counts as diverging.
DIVERGENCE_RATIO = 0.5
MAX_SEQUENCE_TERMS = 50


def _growth_grid(w: WeightFunction, t_max: float) -> np.ndarray:
    if not t_max > 1:
        raise ParameterError(f"t_max must be > 1, got {t_max}")
    end = min(t_max, w.r_max)
    if not end > 1:
        raise ParameterError(f"weight is only defined up to {w.r_max}")
    return np.linspace(1.0, end, settings.criterion_grid_points)


def check_fprime_condition(
    w: WeightFunction, C: float, alpha: float, t_max: float
) -> float:
    """Minimum over t in [1, t_max] of C (1 - t^{-alpha}) - f'(t).

    The growth condition holds when the result is >= -slack_tolerance.

    Raises:
        ParameterError: If C <= 0, alpha <= 1 or t_max <= 1.
    """
    if not C > 0:
        raise ParameterError(f"C must be > 0, got {C}")
    if not alpha > 1:
        raise ParameterError(
            f"alpha must exceed 1, got {alpha}; alpha = 1 with C = 1/4 is the "
            "older condition, see check_soylu_condition"
        )
    t = _growth_grid(w, t_max)
    slack = C * (1.0 - t ** (-alpha)) - np.asarray(w.f_prime(t))
    return float(np.min(slack))


def check_soylu_condition(w: WeightFunction, t_max: float) -> float:
    """Minimum over t in [1, t_max] of (1 - 1/t)/4 - f'(t)."""
    t = _growth_grid(w, t_max)
    return float(np.min(0.25 * (1.0 - 1.0 / t) - np.asarray(w.f_prime(t))))


def partial_ricci_integral(m: RadialManifold, T: float, weighted: bool = True) -> float:
    """Integral of Ric_f (plain Ric when ``weighted`` is False) along the ray up to T.

    Quadrature runs from max(r_min, weight domain start). Starting at r_min,
    the pole segment [0, r_min] is added as r_min Ric(r_min); the curvature
    is bounded there for smooth profiles.

    Raises:
        DomainError: If T exceeds the manifold's domain.
    """
    if T > m.r_dom:
        raise DomainError(f"T = {T} beyond the manifold's domain {m.r_dom}")
    kind = RicciKind.F if weighted else RicciKind.PLAIN
    ric = ray_ricci(m, kind)
    lower = settings.r_min
    if kind is not RicciKind.PLAIN:
        lower = max(lower, m.weight.domain_start)
    if T <= lower:
        return 0.0
    value = quad_silent(ric, lower, T)
    if lower == settings.r_min:
        value += settings.r_min * ric(settings.r_min)
    return value


def classify_trend(probes: List[IntegralProbe], atol: float = 1e-9) -> DivergenceTrend:
    """Diverging when the second window increment exceeds half the first.

    A flat first window is converging if the second is flat too, and
    inconclusive otherwise.
    """
    if len(probes) < 3:
        return DivergenceTrend.INCONCLUSIVE
    inc1 = probes[1].integral - probes[0].integral
    inc2 = probes[2].integral - probes[1].integral
    if inc1 <= atol:
        if inc2 <= atol:
            return DivergenceTrend.CONVERGING
        return DivergenceTrend.INCONCLUSIVE
    if inc2 / inc1 > DIVERGENCE_RATIO:
        return DivergenceTrend.DIVERGING
    return DivergenceTrend.CONVERGING


def sequence_times(t1: float, count: int) -> List[float]:
    """t_1 = t1, t_{l+1} = t_l + 2^{1-l}; the sequence converges to t1 + 2."""
    times = [t1]
    for ell in range(1, count):
        times.append(times[-1] + 2.0 ** (1 - ell))
    return times


def eq10_margin(traj: RiccatiTrajectory, n: int, t: float, t_ref: float = 1.0) -> float:
    """-m(t) - (1/(n-1)) int_{t_ref}^t m^2 - 2n on the sampled trajectory.

    Non-negative margin is the integrated Riccati inequality the doubling
    argument starts from.
    """
    if t < t_ref:
        raise ParameterError(f"t = {t} precedes the reference time {t_ref}")
    times, m = traj.t, traj.m
    if not times.size or not times[0] <= t_ref or not t <= times[-1]:
        raise DomainError(
            f"trajectory samples do not cover [{t_ref}, {t}]"
        )
    inside = (times > t_ref) & (times < t)
    nodes = np.concatenate(([t_ref], times[inside], [t]))
    values = np.array([traj.m_at(float(x)) for x in nodes])
    integral = float(trapezoid(values * values, nodes)) if t > t_ref else 0.0
    m_t = traj.m_at(t)
    logger.debug("eq10.margin", t=t, m=m_t, integral=integral, points=int(nodes.size))
    return -m_t - integral / (n - 1) - 2.0 * n


def blowup_sequence_verify(
    traj: RiccatiTrajectory, n: int, t1: float
) -> BlowupSequenceReport:
    """Check -m(t_l) >= 2^l n along the doubling sequence starting at t1.

    With the precondition at t1 in force a smooth trajectory cannot reach
    T = t1 + 2, so the expected outcome is blow-up before T.
    """
    if t1 < 1:
        raise ParameterError(f"t1 must be >= 1, got {t1}")
    T = t1 + 2.0
    tol = settings.slack_tolerance
    notes: List[str] = []

    if not traj.samples or not traj.t[0] <= 1.0 or not t1 <= traj.t_end:
        return BlowupSequenceReport(
            t1=t1,
            T=T,
            n=n,
            status=BlowupStatus.TRUNCATED,
            precondition_margin=math.nan,
            blowup_time=traj.blowup_time,
            notes=[f"trajectory does not cover [1, t1] with t1 = {t1}"],
        )

    margin = eq10_margin(traj, n, t1)
    if margin < -tol:
        logger.info("blowup.precondition_failed", t1=t1, margin=margin)
        return BlowupSequenceReport(
            t1=t1,
            T=T,
            n=n,
            status=BlowupStatus.PRECONDITION_FAILED,
            precondition_margin=margin,
            blowup_time=traj.blowup_time,
            notes=["integrated inequality fails at t1; no claim asserted"],
        )

    stop = min(T, traj.t_end)
    terms: List[SequenceTerm] = []
    for ell, t in enumerate(sequence_times(t1, MAX_SEQUENCE_TERMS), start=1):
        if t > stop:
            break
        observed = -traj.m_at(t)
        bound = 2.0**ell * n
        terms.append(
            SequenceTerm(
                ell=ell,
                t=t,
                lower_bound=bound,
                observed=observed,
                satisfied=observed >= bound - tol,
            )
        )

    all_satisfied = all(term.satisfied for term in terms)
    contradiction = False
    if traj.blowup_time is not None and traj.blowup_time < T:
        status = BlowupStatus.BLOWUP
    elif traj.t_end < T:
        status = BlowupStatus.TRUNCATED
        notes.append(f"trajectory ends at {traj.t_end:.6g} before T = {T:.6g}")
    elif all_satisfied:
        status = BlowupStatus.CONTRADICTION
        contradiction = True
        notes.append("every term holds on a trajectory smooth through T")
    else:
        status = BlowupStatus.CLAIM_FAILED
        notes.append("a term fails on a trajectory smooth through T")
    notes.append(
        "the induction step bounds the integral with 1/n where the inequality carries "
        "1/(n-1); only the conclusion -m(t_l) >= 2^l n is checked"
    )

    logger.info(
        "blowup.verified",
        t1=t1,
        status=status.value,
        terms=len(terms),
        blowup_time=traj.blowup_time,
    )
    return BlowupSequenceReport(
        t1=t1,
        T=T,
        n=n,
        status=status,
        precondition_margin=margin,
        terms=terms,
        blowup_time=traj.blowup_time,
        contradiction=contradiction,
        notes=notes,
    )


def _conjugate_search(m: RadialManifold, T_probe: float) -> Optional[float]:
    """First conjugate point of the pole along the ray, from the plain Ricci input."""
    t_max = m.r_dom * 1.01 if m.is_bounded else T_probe
    traj = integrate_jacobi(ray_ricci(m, RicciKind.PLAIN), m.n - 1.0, t_max)
    return traj.conjugate_time


def ambrose_diagnosis(
    m: RadialManifold, C: float, alpha: float, T_probe: float
) -> AmbroseReport:
    """Bundle the growth condition, the divergence trend and a conjugate-point search.

    Probes the partial Ricci integral at T_probe/4, T_probe/2 and T_probe
    (capped at the manifold's domain). The hypotheses hold when the growth
    condition holds and the trend is diverging; compactness is predicted
    exactly then.
    """
    if not T_probe > 1:
        raise ParameterError(f"T_probe must be > 1, got {T_probe}")
    notes: List[str] = []
    fprime_slack = check_fprime_condition(m.weight, C, alpha, T_probe)
    fprime_holds = fprime_slack >= -settings.slack_tolerance

    probes = []
    for T in (T_probe / 4.0, T_probe / 2.0, T_probe):
        capped = min(T, m.r_dom)
        if capped < T:
            notes.append(f"probe {T:.6g} capped at the domain end {m.r_dom:.6g}")
        integral = partial_ricci_integral(m, capped)
        probes.append(IntegralProbe(T=capped, integral=integral))
    trend = classify_trend(probes)
    notes.append(f"divergence read from doubling windows: {trend.value} (heuristic)")

    hypotheses_hold = fprime_holds and trend is DivergenceTrend.DIVERGING
    conjugate_time = _conjugate_search(m, T_probe)
    if conjugate_time is None:
        notes.append("no conjugate point found along the ray")

    predicted = hypotheses_hold
    inconsistent = predicted and m.known_compact is False
    if inconsistent:
        logger.error("ambrose.falsification_alarm", manifold=m.name, C=C, alpha=alpha)
        notes.append("compactness predicted on a manifold known to be non-compact")

    logger.info(
        "ambrose.diagnosed",
        manifold=m.name,
        fprime_slack=fprime_slack,
        trend=trend.value,
        conjugate_time=conjugate_time,
    )
    return AmbroseReport(
        fprime_slack=fprime_slack,
        fprime_condition_holds=fprime_holds,
        probes=probes,
        trend=trend,
        hypotheses_hold=hypotheses_hold,
        conjugate_time=conjugate_time,
        predicted_compact=predicted,
        known_compact=m.known_compact,
        inconsistent=inconsistent,
        parameters={**m.parameters(), "C": C, "alpha": alpha, "T_probe": T_probe},
        notes=notes,
    )
