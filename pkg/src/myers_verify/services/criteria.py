"""Compactness constants and criterion evaluation.

The constants follow one pattern: a prefactor bounding the f-mean curvature
times the reciprocal of the tail integral of h. When the tail diverges the
criterion only needs some positive constant, and the constant collapses to
``eps1``.
"""

import math
from typing import Callable, List, NamedTuple, Optional

import numpy as np
import structlog

from myers_verify.exceptions import ParameterError
from myers_verify.models.criterion import (
    POWER_LAW_VARIANTS,
    C3Convention,
    CriterionParams,
    CriterionVariant,
)
from myers_verify.models.manifold import RadialManifold
from myers_verify.models.profiles import (
    GrowthFunction,
    InverseSquareGrowth,
    PowerLawGrowth,
    TabulatedGrowth,
)
from myers_verify.models.reports import CompactnessVerdict, ConstantReport
from myers_verify.services import radial_manifold as rm
from myers_verify.services.comparison import window_end
from myers_verify.services.numerics import golden_section_minimize, quad_silent
from myers_verify.services.riccati_engine import integrate_jacobi
from myers_verify.settings import settings

logger = structlog.get_logger(__name__)

DIVERGENT_TAIL_NOTE = (
    "tail integral of h diverges: any positive constant works, so the constant is eps1"
)
WEIGHT_FREE_VARIANTS = frozenset({CriterionVariant.WAN, CriterionVariant.CGT})
EPS_SEARCH_LOWER = 1e-6
EPS_SEARCH_SPAN = 1e3


class EpsilonOptimum(NamedTuple):
    epsilon: float
    value: float


def _check_free(eps: float, eps1: float) -> None:
    if not eps > 0:
        raise ParameterError(f"eps must be > 0, got {eps}")
    if eps1 < 0:
        raise ParameterError(f"eps1 must be >= 0, got {eps1}")


def tail_integral(h: GrowthFunction, eps: float) -> float:
    """Integral of h from ``eps`` to infinity; +inf when it diverges.

    Closed forms are used where the growth function provides one. Tabulated
    growths integrate the spline up to the last knot and add the power-law
    extension beyond it. Anything else goes to adaptive quadrature.
    """
    if not eps > 0:
        raise ParameterError(f"eps must be > 0, got {eps}")
    analytic = h.analytic_tail(eps)
    if analytic is not None:
        return analytic
    if isinstance(h, TabulatedGrowth):
        head = quad_silent(lambda s: float(h.h(s)), eps, h.r_last)
        return head + h.tail_beyond(max(eps, h.r_last))
    value = quad_silent(lambda s: float(h.h(s)), eps, math.inf)
    return value if math.isfinite(value) else math.inf


def _over_tail(prefactor: float, tail: float, eps1: float) -> float:
    if math.isinf(tail):
        return eps1
    return prefactor / tail + eps1


def const_c1(h: GrowthFunction, n: int, delta: float, eps: float, eps1: float) -> float:
    """(4 delta + (n + 4 delta (eps + 1) - 1)/eps) / int_eps^inf h + eps1."""
    _check_free(eps, eps1)
    if delta < 0:
        raise ParameterError(f"delta must be >= 0, got {delta}")
    prefactor = 4.0 * delta + (n + 4.0 * delta * (eps + 1.0) - 1.0) / eps
    return _over_tail(prefactor, tail_integral(h, eps), eps1)


def const_c2(
    n: int, b: float, r0: float, delta: float, eps: float, eps1: float
) -> float:
    """C1 specialised to h = (r0 + r)^{-b}; eps1 alone for b <= 1."""
    _check_free(eps, eps1)
    if b <= 1:
        return eps1
    prefactor = 4.0 * delta + (n + 4.0 * delta * (eps + 1.0) - 1.0) / eps
    return prefactor * (b - 1.0) * (r0 + eps) ** (b - 1.0) + eps1


def const_c3(
    h: GrowthFunction,
    n: int,
    a: float,
    eps: float,
    eps1: float,
    convention: C3Convention | str = C3Convention.PROOF,
) -> float:
    """(c a + (n-1)/eps) / int_eps^inf h + eps1 with c = 2 (proof) or 1 (statement)."""
    _check_free(eps, eps1)
    if a < 0:
        raise ParameterError(f"a must be >= 0, got {a}")
    coefficient = 2.0 if C3Convention(convention) is C3Convention.PROOF else 1.0
    prefactor = coefficient * a + (n - 1.0) / eps
    return _over_tail(prefactor, tail_integral(h, eps), eps1)


def const_c4(n: int, b: float, r0: float, a: float, eps: float, eps1: float) -> float:
    """Power-law constant under f' >= -a.

    For b > 2 the closed form at eps = r0/(b-2) is returned and ``eps`` is
    ignored; for 1 < b <= 2 the eps-dependent form; eps1 for b <= 1.
    """
    _check_free(eps, eps1)
    if a < 0:
        raise ParameterError(f"a must be >= 0, got {a}")
    if b > 2:
        return (
            (2.0 * a * r0 + (n - 1.0) * (b - 2.0))
            * r0 ** (b - 2.0)
            * (b - 1.0) ** b
            / (b - 2.0) ** (b - 1.0)
        )
    if b > 1:
        return (2.0 * a + (n - 1.0) / eps) * (b - 1.0) * (r0 + eps) ** (b - 1.0)
    return eps1


def const_c5(h: GrowthFunction, n: int, k: float, eps: float, eps1: float) -> float:
    """((n + k - 1)/eps) / int_eps^inf h + eps1."""
    _check_free(eps, eps1)
    if k < 0:
        raise ParameterError(f"k must be >= 0, got {k}")
    return _over_tail((n + k - 1.0) / eps, tail_integral(h, eps), eps1)


def const_c6(n: int, k: float, b: float, r0: float, eps: float, eps1: float) -> float:
    """Power-law constant for Ric_f^k; eps is ignored for b > 2."""
    _check_free(eps, eps1)
    if k < 0:
        raise ParameterError(f"k must be >= 0, got {k}")
    dim = n + k - 1.0
    if b > 2:
        return dim * (b - 1.0) ** b / (b - 2.0) ** (b - 2.0) * r0 ** (b - 2.0)
    if b > 1:
        return dim / eps * (b - 1.0) * (r0 + eps) ** (b - 1.0)
    return eps1


def wan_constant(n: int, b: float, r0: float, eps: float = 1.0) -> float:
    """Constant of the plain-Ricci power-law criterion (b >= 2).

    Raises:
        ParameterError: If b < 2.
    """
    if b < 2:
        raise ParameterError(f"Wan's constant is stated for b >= 2, got b = {b}")
    if b > 2:
        return (n - 1.0) * (b - 1.0) ** b / (b - 2.0) ** (b - 2.0) * r0 ** (b - 2.0)
    if not eps > 0:
        raise ParameterError(f"eps must be > 0, got {eps}")
    return (n - 1.0) * (1.0 + r0 / eps)


def qiu_delta2(
    h: GrowthFunction, n: int, delta1: float, eps: float, eps1: float
) -> float:
    """((n-1)/eps + 2 delta1) / int_eps^inf h + eps1."""
    _check_free(eps, eps1)
    return _over_tail((n - 1.0) / eps + 2.0 * delta1, tail_integral(h, eps), eps1)


def cgt_diameter(r0: float, nu: float) -> float:
    """Diameter bound r0 e^{pi/nu} of the inverse-square criterion."""
    if not r0 > 0 or not nu > 0:
        raise ParameterError(f"need r0 > 0 and nu > 0, got r0 = {r0}, nu = {nu}")
    return r0 * math.exp(math.pi / nu)


def myers_diameter(H: float) -> float:
    """Classical bound pi/sqrt(H); +inf when H <= 0."""
    return math.pi / math.sqrt(H) if H > 0 else math.inf


def epsilon_objective(
    variant: CriterionVariant | str, n: int, k: float, b: float, r0: float, a: float
) -> Callable[[float], float]:
    """The eps-dependent power-law bound minimised by ``epsilon_optimize``."""
    variant = CriterionVariant(variant)
    if variant is CriterionVariant.C4:
        return lambda e: (2.0 * a + (n - 1.0) / e) * (b - 1.0) * (r0 + e) ** (b - 1.0)
    if variant is CriterionVariant.C6:
        return lambda e: (n + k - 1.0) / e * (b - 1.0) * (r0 + e) ** (b - 1.0)
    raise ParameterError(
        f"epsilon optimisation is defined for C4 and C6, got {variant.value}"
    )


def epsilon_optimize(
    variant: CriterionVariant | str,
    n: int,
    k: float = 0.0,
    b: float = 3.0,
    r0: float = 1.0,
    a: float = 0.0,
) -> EpsilonOptimum:
    """Minimise the power-law bound over eps in (1e-6, 1e3 r0).

    Golden-section search in log eps; the objective is convex there.
    """
    if not b > 2:
        raise ParameterError(f"epsilon optimisation needs b > 2, got {b}")
    if not r0 > 0:
        raise ParameterError(f"r0 must be > 0, got {r0}")
    objective = epsilon_objective(variant, n, k, b, r0, a)
    result = golden_section_minimize(
        objective, EPS_SEARCH_LOWER, EPS_SEARCH_SPAN * r0, log_scale=True
    )
    logger.debug(
        "epsilon.optimized",
        variant=str(variant),
        epsilon=result.argmin,
        value=result.minimum,
        iterations=result.iterations,
    )
    return EpsilonOptimum(epsilon=result.argmin, value=result.minimum)


# ---------------------------------------------------------------------------
# Constant selection
# ---------------------------------------------------------------------------


def _power_branch(b: float) -> str:
    if b > 2:
        return "b>2"
    if b > 1:
        return "1<b<=2"
    return "b<=1"


def _tail_branch(h: GrowthFunction, eps: float) -> str:
    return "divergent-tail" if math.isinf(tail_integral(h, eps)) else "finite-tail"


def growth_for(params: CriterionParams, h: Optional[GrowthFunction]) -> GrowthFunction:
    """The h a variant is evaluated against; power-law variants build their own."""
    if params.variant in POWER_LAW_VARIANTS:
        return PowerLawGrowth(params.b or 0.0, params.r0 or 0.0)
    if params.variant is CriterionVariant.CGT:
        return InverseSquareGrowth()
    if h is None:
        raise ParameterError(
            f"variant {params.variant.value} needs a growth function h"
        )
    return h


def constant_report(
    params: CriterionParams, h: Optional[GrowthFunction] = None
) -> ConstantReport:
    """Constant of a variant with its branch and, for C4/C6 with b > 2,
    the distance to the numerically optimised eps."""
    p = params
    v = p.variant
    n, eps, eps1 = p.n, p.eps, p.eps1
    # the validator guarantees the fields each variant reads
    delta, a, k = p.delta or 0.0, p.a or 0.0, p.k or 0.0
    b, r0, nu, delta1 = p.b or 0.0, p.r0 or 0.0, p.nu or 0.0, p.delta1 or 0.0
    notes: List[str] = []
    optimum: Optional[EpsilonOptimum] = None

    if v is CriterionVariant.C1:
        h = growth_for(p, h)
        value = const_c1(h, n, delta, eps, eps1)
        branch = _tail_branch(h, eps)
    elif v is CriterionVariant.C2:
        value = const_c2(n, b, r0, delta, eps, eps1)
        branch = _power_branch(b)
    elif v is CriterionVariant.C3:
        h = growth_for(p, h)
        value = const_c3(h, n, a, eps, eps1, p.convention)
        branch = f"{_tail_branch(h, eps)}/{p.convention.value}"
        if p.convention is C3Convention.STATEMENT and a > 0:
            notes.append("statement convention uses a where the proof needs 2a")
    elif v is CriterionVariant.C4:
        value = const_c4(n, b, r0, a, eps, eps1)
        branch = _power_branch(b)
        if b > 2:
            optimum = epsilon_optimize(v, n, 0.0, b, r0, a)
    elif v is CriterionVariant.C5:
        h = growth_for(p, h)
        value = const_c5(h, n, k, eps, eps1)
        branch = _tail_branch(h, eps)
    elif v is CriterionVariant.C6:
        value = const_c6(n, k, b, r0, eps, eps1)
        branch = _power_branch(b)
        if b > 2:
            optimum = epsilon_optimize(v, n, k, b, r0, 0.0)
    elif v is CriterionVariant.WAN:
        value = wan_constant(n, b, r0, eps)
        branch = "b>2" if b > 2 else "b=2"
    elif v is CriterionVariant.QIU:
        h = growth_for(p, h)
        value = qiu_delta2(h, n, delta1, eps, eps1)
        branch = _tail_branch(h, eps)
    else:
        value = (n - 1.0) * (0.25 + nu * nu)
        branch = "inverse-square"
        notes.append(f"diameter bound r0 e^(pi/nu) = {cgt_diameter(r0, nu):.17g}")

    if branch.startswith("divergent-tail") or branch == "b<=1":
        notes.append(DIVERGENT_TAIL_NOTE)
    cross_delta = None
    if optimum is not None:
        cross_delta = abs(value - optimum.value) / abs(value)
        if optimum.value < value * (1.0 - 1e-9):
            notes.append(
                f"eps = {optimum.epsilon:.6g} gives the smaller constant "
                f"{optimum.value:.17g}"
            )

    return ConstantReport(
        variant=v.value,
        value=value,
        branch=branch,
        parameters=p.echo(),
        optimized_epsilon=optimum.epsilon if optimum else None,
        optimized_value=optimum.value if optimum else None,
        cross_check_delta=cross_delta,
        notes=notes,
    )


# ---------------------------------------------------------------------------
# Criterion evaluation
# ---------------------------------------------------------------------------


def _tensor(m: RadialManifold, p: CriterionParams, grid: np.ndarray) -> np.ndarray:
    v = p.variant
    if v in (CriterionVariant.WAN, CriterionVariant.CGT):
        return np.asarray(rm.ricci_radial(m, grid))
    if v in (CriterionVariant.C5, CriterionVariant.C6):
        return np.asarray(rm.ric_f_k(m, p.k or 0.0, grid))
    return np.asarray(rm.ric_f(m, grid))


def _hypothesis(
    m: RadialManifold, p: CriterionParams, grid: np.ndarray
) -> tuple[np.ndarray, str]:
    """Pointwise margin of the variant's side condition on the weight."""
    v = p.variant
    if v in (CriterionVariant.C1, CriterionVariant.C2):
        delta = p.delta or 0.0
        margin = delta * (grid + 1.0) - np.abs(np.asarray(m.weight.f(grid)))
        return margin, "|f| <= delta (r + 1)"
    if v in (CriterionVariant.C3, CriterionVariant.C4):
        return np.asarray(m.weight.f_prime(grid)) + (p.a or 0.0), "f' >= -a"
    if v is CriterionVariant.QIU:
        return (p.delta1 or 0.0) - np.asarray(m.weight.f_prime(grid)), "f' <= delta1"
    return np.full_like(grid, math.inf), "none"


def _criterion_grid(m: RadialManifold, start: float, end: float) -> np.ndarray:
    """Uniform grid on [start, end], plus a log-spaced tail on unbounded rays.

    The tail stops where the weight's samples end or the profile overflows.
    """
    grid = np.linspace(start, end, settings.criterion_grid_points)
    far = min(settings.criterion_tail_radius, m.weight.r_max)
    if m.is_bounded or not far > end:
        return grid
    tail = np.geomspace(end, far, settings.criterion_tail_points)[1:]
    with np.errstate(over="ignore", invalid="ignore"):
        values = [
            np.asarray(m.profile.phi(tail)),
            np.asarray(m.profile.phi_prime(tail)),
            np.asarray(m.profile.phi_double_prime(tail)),
        ]
    finite = np.logical_and.reduce([np.isfinite(v) for v in values]) & (values[0] > 0)
    return np.concatenate([grid, tail[finite]])


def _n_eff(m: RadialManifold, p: CriterionParams) -> float:
    if p.variant in (CriterionVariant.C5, CriterionVariant.C6):
        return m.n + (p.k or 0.0) - 1.0
    return m.n - 1.0


def evaluate_criterion(
    m: RadialManifold,
    params: CriterionParams,
    h: Optional[GrowthFunction] = None,
    r_max_test: Optional[float] = None,
) -> CompactnessVerdict:
    """Test ``tensor(r) >= C h(r)`` on [r_min, r_max_test] for one variant.

    The verdict only covers the tested window. When the criterion is met,
    the comparison ODE driven by the bound curve C h is integrated and its
    first conjugate time is reported as ``cross_check``.

    Raises:
        ParameterError: If ``params.n`` disagrees with the manifold, a growth
            function is missing, or the window holds fewer than
            ``min_grid_points`` points.
    """
    p = params
    if p.n != m.n:
        raise ParameterError(
            f"criterion dimension {p.n} differs from manifold dimension {m.n}"
        )
    r_max_test = r_max_test or settings.r_max_test
    growth = growth_for(p, h)
    report = constant_report(p, growth)
    C = report.value

    start = settings.r_min
    if p.variant is CriterionVariant.CGT:
        start = max(start, p.r0 or 0.0)
    # Wan and CGT bound plain Ric and put no condition on f.
    uses_weight = p.variant not in WEIGHT_FREE_VARIANTS
    gap = (start, m.weight.domain_start)
    weight_gap = uses_weight and gap[1] > gap[0]
    if weight_gap:
        start = gap[1]
    end = window_end(m, r_max_test)
    if not end > start:
        raise ParameterError(f"criterion window [{start}, {end}] is empty")
    grid = _criterion_grid(m, start, end)
    if grid.size < settings.min_grid_points:
        raise ParameterError(
            f"criterion grid has {grid.size} points, "
            f"fewer than {settings.min_grid_points}"
        )

    h_values = np.asarray(growth.h(grid))
    margin = _tensor(m, p, grid) - C * h_values
    hyp, hyp_label = _hypothesis(m, p, grid)
    min_margin = float(np.min(margin))
    hypothesis_margin = float(np.min(hyp))
    tol = settings.slack_tolerance
    criterion_met = (
        min_margin >= -tol and hypothesis_margin >= -tol and not weight_gap
    )

    notes = list(report.notes)
    notes.append(
        f"criterion checked on the tested window [{start:.6g}, {end:.6g}] only"
    )
    if grid[-1] > end:
        notes.append(f"tail checked on a log grid up to r = {grid[-1]:.6g}")
    if weight_gap:
        notes.append(
            f"weight undefined on [{gap[0]:.6g}, {gap[1]:.6g}); the hypotheses "
            "cannot be verified there, so the criterion is not met"
        )
    if hypothesis_margin < -tol:
        worst = float(grid[int(np.argmin(hyp))])
        notes.append(f"hypothesis {hyp_label} fails at r = {worst:.6g}")
    if min_margin < -tol:
        worst = float(grid[int(np.argmin(margin))])
        notes.append(f"curvature bound fails at r = {worst:.6g}")

    cross_check = None
    if criterion_met:
        cross_check = _bound_curve_conjugate_time(
            p, growth, C, _n_eff(m, p), r_max_test
        )
        if cross_check is None:
            notes.append("bound curve has no conjugate point within r_max_test")
        elif p.variant is CriterionVariant.CGT:
            bound = cgt_diameter(p.r0 or 0.0, p.nu or 0.0)
            relation = "within" if cross_check <= bound else "beyond"
            notes.append(
                f"bound curve conjugate time lies {relation} the diameter bound"
            )

    inconsistent = criterion_met and m.known_compact is False
    if inconsistent:
        logger.error(
            "criterion.falsification_alarm",
            manifold=m.name,
            variant=p.variant.value,
            constant=C,
            min_margin=min_margin,
        )
        notes.append("criterion met on a manifold known to be non-compact")

    logger.info(
        "criterion.evaluated",
        manifold=m.name,
        variant=p.variant.value,
        constant=C,
        min_margin=min_margin,
        criterion_met=criterion_met,
    )
    return CompactnessVerdict(
        variant=p.variant.value,
        constant_used=C,
        branch=report.branch,
        min_margin=min_margin,
        hypothesis_margin=hypothesis_margin,
        criterion_met=criterion_met,
        predicted_compact=criterion_met,
        known_compact=m.known_compact,
        inconsistent=inconsistent,
        window=(float(start), float(end)),
        cross_check=cross_check,
        parameters={**growth.parameters(), **m.parameters(), **p.echo(), "C": C},
        notes=notes,
    )


def _bound_curve_conjugate_time(
    p: CriterionParams,
    growth: GrowthFunction,
    C: float,
    n_eff: float,
    t_max: float,
) -> Optional[float]:
    if p.variant is CriterionVariant.CGT:
        r0 = p.r0 or 0.0

        def ric(t: float) -> float:
            return C / (t * t) if t >= r0 else 0.0

    else:

        def ric(t: float) -> float:
            return C * float(growth.h(t))

    return integrate_jacobi(ric, n_eff, t_max).conjugate_time
