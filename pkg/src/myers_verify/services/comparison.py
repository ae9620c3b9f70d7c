"""Grid verification of the f-mean curvature comparison statements.

Each verifier evaluates a pointwise hypothesis and a pointwise conclusion on
a radial grid and reports the minimum slack of each. A failed hypothesis
makes the statement vacuous, so the conclusion is then reported but not
judged.
"""

import math
from typing import Callable, List, Optional

import numpy as np
import structlog

from myers_verify.exceptions import DomainError, ParameterError
from myers_verify.models.manifold import RadialManifold
from myers_verify.models.model_space import ModelSpaceParams
from myers_verify.models.reports import ComparisonReport, ComparisonStatus, GridPoint
from myers_verify.services import radial_manifold as rm
from myers_verify.services.model_space import (
    RangeVariant,
    m_h,
    m_h_effective,
    sn_h,
    sn_h_prime,
    valid_range,
)
from myers_verify.services.numerics import quad_silent
from myers_verify.settings import settings

logger = structlog.get_logger(__name__)

# Relative pull-back from the far pole of a closed profile.
POLE_MARGIN = 1e-6

Margins = tuple[np.ndarray, np.ndarray, np.ndarray]


def window_end(m: RadialManifold, limit: float) -> float:
    """Right end of a check window: ``limit`` capped by the manifold's domain."""
    end = limit
    if math.isfinite(m.r_dom):
        end = min(end, m.r_dom * (1.0 - POLE_MARGIN))
    return end


def radial_grid(
    start: float, end: float, grid_step: Optional[float] = None
) -> np.ndarray:
    """Uniform grid on [start, end] with at least ``min_grid_points`` nodes.

    Returns an empty array when the window is empty.
    """
    step = grid_step or settings.comparison_grid_step
    if not step > 0:
        raise ParameterError(f"grid_step must be > 0, got {step}")
    if not end > start:
        return np.empty(0)
    count = max(settings.min_grid_points, int(math.ceil((end - start) / step)) + 1)
    return np.linspace(start, end, count)


def _judge(
    statement: str,
    m: RadialManifold,
    grid: np.ndarray,
    margins: Optional[Margins],
    parameters: dict,
    notes: List[str],
    lower: Optional[np.ndarray] = None,
) -> ComparisonReport:
    window = (float(grid[0]), float(grid[-1])) if grid.size else (math.nan, math.nan)
    params = {**m.parameters(), **parameters}

    if margins is None:
        logger.warning("comparison.empty_window", statement=statement)
        return ComparisonReport(
            statement=statement,
            hypothesis_slack=math.nan,
            conclusion_slack=math.nan,
            verdict=ComparisonStatus.EMPTY_WINDOW,
            window=window,
            parameters=params,
            notes=notes + ["check window is empty"],
        )

    hypothesis, lhs, rhs = margins
    conclusion = rhs - lhs
    lower_slack = None
    if lower is not None:
        lower_slack = float(np.min(lower))
        conclusion = np.minimum(conclusion, lower)

    hypothesis_slack = float(np.min(hypothesis))
    conclusion_slack = float(np.min(conclusion))
    tol = settings.slack_tolerance
    # Both sides grow like 1/t near the pole; slack is judged relative to them.
    scaled = conclusion / np.maximum(1.0, np.abs(rhs))
    judged_slack = float(np.min(scaled))
    gap = weight_gap(m)
    if gap is not None:
        verdict = ComparisonStatus.HYPOTHESIS_VIOLATED
        notes = notes + [
            f"weight undefined on [{gap[0]:.6g}, {gap[1]:.6g}); the hypotheses "
            "cannot be verified there, conclusion not judged"
        ]
    elif hypothesis_slack < -tol:
        verdict = ComparisonStatus.HYPOTHESIS_VIOLATED
        worst = float(grid[int(np.argmin(hypothesis))])
        notes = notes + [
            f"hypothesis fails first at t = {worst:.6g}; conclusion not judged"
        ]
    elif judged_slack < -tol:
        verdict = ComparisonStatus.CONCLUSION_VIOLATED
        worst = float(grid[int(np.argmin(scaled))])
        notes = notes + [f"conclusion fails at t = {worst:.6g}"]
        logger.warning(
            "comparison.conclusion_violated",
            statement=statement,
            t=worst,
            slack=conclusion_slack,
        )
    else:
        verdict = ComparisonStatus.HOLDS

    logger.info(
        "comparison.verified",
        statement=statement,
        verdict=verdict.value,
        hypothesis_slack=hypothesis_slack,
        conclusion_slack=conclusion_slack,
        points=int(grid.size),
    )
    points = [
        GridPoint(t=float(t), lhs=float(a), rhs=float(b), hypothesis_margin=float(h))
        for t, a, b, h in zip(grid, lhs, rhs, hypothesis)
    ]
    return ComparisonReport(
        statement=statement,
        hypothesis_slack=hypothesis_slack,
        conclusion_slack=conclusion_slack,
        judged_slack=judged_slack,
        lower_slack=lower_slack,
        verdict=verdict,
        window=window,
        grid=points,
        parameters=params,
        notes=notes,
    )


def _start(m: RadialManifold) -> float:
    return max(settings.r_min, m.weight.domain_start)


def weight_gap(m: RadialManifold) -> Optional[tuple[float, float]]:
    """Radii [r_min, domain_start) next to the pole where f is undefined."""
    if m.weight.domain_start > settings.r_min:
        return (settings.r_min, m.weight.domain_start)
    return None


def _growth_margin(m: RadialManifold, delta: float, t: np.ndarray) -> np.ndarray:
    """delta (t + 1) - |f(t)|."""
    return delta * (t + 1.0) - np.abs(np.asarray(m.weight.f(t)))


def verify_thm21(
    m: RadialManifold,
    delta: float,
    H: float,
    grid_step: Optional[float] = None,
    r_max_test: Optional[float] = None,
) -> ComparisonReport:
    """Check m_f(t) <= m_H(t) (1 + 4 delta (t+1)/(n-1)) on the scaled window.

    Hypotheses checked on the same grid: Ric_f >= (n-1) H and
    |f| <= delta (t + 1). The window is [r_min, pi/(4 sqrt H)] for H > 0,
    otherwise [r_min, r_max_test], cut at the manifold's domain.

    ``delta = 0`` is accepted as the classical limit.
    """
    if delta < 0:
        raise ParameterError(f"delta must be >= 0, got {delta}")
    limit = min(valid_range(H, RangeVariant.THM21), r_max_test or settings.r_max_test)
    grid = radial_grid(_start(m), window_end(m, limit), grid_step)
    parameters = {"statement": "thm21", "delta": delta, "H": H}
    if grid.size == 0:
        return _judge("thm21", m, grid, None, parameters, [])

    hypothesis = np.minimum(
        np.asarray(rm.ric_f(m, grid)) - (m.n - 1) * H, _growth_margin(m, delta, grid)
    )
    lhs = np.asarray(rm.m_f(m, grid))
    rhs = np.asarray(m_h_effective(m.n, delta, H, grid))
    return _judge("thm21", m, grid, (hypothesis, lhs, rhs), parameters, [])


def verify_thm22(
    m: RadialManifold,
    a: float,
    H: float,
    grid_step: Optional[float] = None,
    r_max_test: Optional[float] = None,
) -> ComparisonReport:
    """Check m_f(t) <= m_H(t) + a under Ric_f >= (n-1) H and f' >= -a.

    The window is [r_min, pi/(2 sqrt H)] for H > 0.
    """
    if a < 0:
        raise ParameterError(f"a must be >= 0, got {a}")
    limit = min(valid_range(H, RangeVariant.THM22), r_max_test or settings.r_max_test)
    grid = radial_grid(_start(m), window_end(m, limit), grid_step)
    parameters = {"statement": "thm22", "a": a, "H": H}
    if grid.size == 0:
        return _judge("thm22", m, grid, None, parameters, [])

    hypothesis = np.minimum(
        np.asarray(rm.ric_f(m, grid)) - (m.n - 1) * H,
        np.asarray(m.weight.f_prime(grid)) + a,
    )
    lhs = np.asarray(rm.m_f(m, grid))
    rhs = np.asarray(m_h(ModelSpaceParams(n=m.n, H=H), grid)) + a
    return _judge("thm22", m, grid, (hypothesis, lhs, rhs), parameters, [])


def verify_ibp_chain(m: RadialManifold, delta: float, H: float, t: float) -> float:
    """Slack of the integrated comparison behind the scaled bound.

    Returns rhs - lhs of

        sn_H^2 m_f <= sn_H^2 m_H + 2 delta (t+1) (sn_H^2)' - delta sn_H^2

    at time ``t``, with every term in closed form.

    Raises:
        DomainError: If ``t`` lies outside the scaled window or the manifold.
    """
    gap = weight_gap(m)
    if gap is not None:
        raise DomainError(
            f"weight undefined on [{gap[0]:.6g}, {gap[1]:.6g}); "
            "the chain starts at the pole"
        )
    end = window_end(m, valid_range(H, RangeVariant.THM21))
    if not _start(m) <= t <= end * (1.0 + 1e-12):
        raise DomainError(f"t = {t} outside the comparison window [{_start(m)}, {end}]")
    params = ModelSpaceParams(n=m.n, H=H)
    s = float(sn_h(params, t))
    s_prime = float(sn_h_prime(params, t))
    s2 = s * s
    lhs = s2 * float(rm.m_f(m, t))
    rhs = (
        s2 * float(m_h(params, t))
        + 2.0 * delta * (t + 1.0) * 2.0 * s * s_prime
        - delta * s2
    )
    return rhs - lhs


def _require_open(m: RadialManifold, claim: str) -> None:
    if m.known_compact is True:
        raise ParameterError(
            f"{claim} is stated for rays of non-compact manifolds; "
            f"{m.name} is marked compact"
        )


def _ray_window(
    m: RadialManifold, grid_step: Optional[float], r_max_test: Optional[float]
) -> np.ndarray:
    return radial_grid(
        _start(m), window_end(m, r_max_test or settings.r_max_test), grid_step
    )


def _two_sided(
    statement: str,
    m: RadialManifold,
    grid: np.ndarray,
    hypothesis: Callable[[np.ndarray], np.ndarray],
    lower_bound: Callable[[np.ndarray], np.ndarray],
    upper_bound: Callable[[np.ndarray], np.ndarray],
    parameters: dict,
) -> ComparisonReport:
    if grid.size == 0:
        return _judge(statement, m, grid, None, parameters, [])
    lhs = np.asarray(rm.m_f(m, grid))
    rhs = upper_bound(grid)
    lower = lhs - lower_bound(grid)
    return _judge(
        statement,
        m,
        grid,
        (hypothesis(grid), lhs, rhs),
        parameters,
        ["conclusion slack is the smaller of the lower and upper bound slacks"],
        lower=lower,
    )


def verify_mf_bounds(
    m: RadialManifold,
    delta: float,
    grid_step: Optional[float] = None,
    r_max_test: Optional[float] = None,
) -> ComparisonReport:
    """Two-sided check -4 delta <= m_f(t) <= (n + 4 delta (t+1) - 1)/t along a ray.

    Hypotheses: Ric_f >= 0 and |f| <= delta (t + 1). Refuses manifolds
    marked compact, where the lower bound is not claimed.
    """
    _require_open(m, "the m_f two-sided bound")
    if not delta > 0:
        raise ParameterError(f"delta must be > 0, got {delta}")
    n = m.n
    return _two_sided(
        "mf-bounds",
        m,
        _ray_window(m, grid_step, r_max_test),
        lambda t: np.minimum(np.asarray(rm.ric_f(m, t)), _growth_margin(m, delta, t)),
        lambda t: np.full_like(t, -4.0 * delta),
        lambda t: (n + 4.0 * delta * (t + 1.0) - 1.0) / t,
        {"statement": "mf-bounds", "delta": delta},
    )


def verify_mf_bounds_k(
    m: RadialManifold,
    k: float,
    grid_step: Optional[float] = None,
    r_max_test: Optional[float] = None,
) -> ComparisonReport:
    """Two-sided check 0 <= m_f(t) <= (n + k - 1)/t under Ric_f^k >= 0."""
    _require_open(m, "the m_f two-sided bound")
    if not k > 0:
        raise ParameterError(f"k must be > 0, got {k}")
    n = m.n
    return _two_sided(
        "mf-bounds-k",
        m,
        _ray_window(m, grid_step, r_max_test),
        lambda t: np.asarray(rm.ric_f_k(m, k, t)),
        np.zeros_like,
        lambda t: (n + k - 1.0) / t,
        {"statement": "mf-bounds-k", "k": k},
    )


def verify_mf_bounds_a(
    m: RadialManifold,
    a: float,
    grid_step: Optional[float] = None,
    r_max_test: Optional[float] = None,
) -> ComparisonReport:
    """Two-sided check -a <= m_f(t) <= (n-1)/t + a under Ric_f >= 0, f' >= -a."""
    _require_open(m, "the m_f two-sided bound")
    if a < 0:
        raise ParameterError(f"a must be >= 0, got {a}")
    n = m.n
    return _two_sided(
        "mf-bounds-a",
        m,
        _ray_window(m, grid_step, r_max_test),
        lambda t: np.minimum(
            np.asarray(rm.ric_f(m, t)), np.asarray(m.weight.f_prime(t)) + a
        ),
        lambda t: np.full_like(t, -a),
        lambda t: (n - 1.0) / t + a,
        {"statement": "mf-bounds-a", "a": a},
    )


def verify_integrated_riccati(m: RadialManifold, eps: float, t: float) -> float:
    """Slack of the integrated Riccati inequality between ``eps`` and ``t``.

    Returns

        -m_f(t) + m_f(eps) - int_eps^t Ric_f - (1/(n-1)) int_eps^t m^2,

    which vanishes on warped products with radial weight.
    """
    if not _start(m) <= eps < t:
        raise DomainError(f"need {_start(m)} <= eps < t, got eps = {eps}, t = {t}")
    if t >= m.r_dom:
        raise DomainError(f"t = {t} beyond the manifold's domain {m.r_dom}")
    ric_integral = quad_silent(lambda s: float(rm.ric_f(m, s)), eps, t)
    m_squared = quad_silent(lambda s: float(rm.mean_curv(m, s)) ** 2, eps, t)
    return (
        -float(rm.m_f(m, t))
        + float(rm.m_f(m, eps))
        - ric_integral
        - m_squared / (m.n - 1)
    )
