"""The verification workflows behind each subcommand.

Each command turns a validated Scenario into an Outcome: the exit code of
the workflow, the rendered report and the CSV rows. Errors propagate as
MyersVerifyError (or OSError); ``main`` maps them to exit code 1.
"""

from typing import Any, Callable, Dict, List, Mapping, NamedTuple, Optional

import structlog

from myers_verify.cli.config import FILE_KEYS, build_scenario, expand_grid
from myers_verify.cli.output import (
    Row,
    ambrose_row,
    comparison_rows,
    comparison_summary,
    constant_row,
    criterion_row,
    slack_row,
)
from myers_verify.cli.render import (
    render_ambrose,
    render_comparison,
    render_constant,
    render_slack,
    render_sweep,
    render_verdict,
)
from myers_verify.models.criterion import POWER_LAW_VARIANTS, CriterionVariant
from myers_verify.models.manifold import RadialManifold
from myers_verify.models.profiles import GrowthFunction
from myers_verify.models.reports import ComparisonReport, ComparisonStatus
from myers_verify.models.scenario import CompareVariant, Scenario, Workflow
from myers_verify.services import ambrose, comparison, criteria
from myers_verify.services.profiles import WeightFactory, build_manifold, get_growth
from myers_verify.services.radial_manifold import RicciKind, ray_ricci
from myers_verify.services.riccati_engine import integrate_riccati_from
from myers_verify.settings import settings
from myers_verify.workers.sweep import run_points

logger = structlog.get_logger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_CONCLUSION_VIOLATED = 2
EXIT_HYPOTHESIS_VIOLATED = 3
EXIT_ALARM = 4

# Most severe first; a sweep exits with the worst code among its points.
EXIT_SEVERITY = (
    EXIT_ALARM,
    EXIT_CONCLUSION_VIOLATED,
    EXIT_HYPOTHESIS_VIOLATED,
    EXIT_OK,
)

# Interior start of the blow-up trajectory and the margin past T it runs to.
BLOWUP_T0 = 1.0
BLOWUP_OVERRUN = 0.5


class Outcome(NamedTuple):
    """Result of one workflow run.

    ``rows`` is what ``--out`` writes; ``summary`` is the single row a sweep
    keeps for the point.
    """

    exit_code: int
    text: str
    rows: List[Row]
    summary: Row


def make_manifold(s: Scenario) -> RadialManifold:
    """Catalog (or tabulated) manifold with the scenario's weight."""
    weight = WeightFactory.get_weight(
        s.weight.value, scale=s.weight_scale, alpha=s.weight_alpha, path=s.weight_file
    )
    return build_manifold(
        s.manifold.value,
        s.n,
        weight=weight,
        H=s.curvature,
        beta=s.beta,
        profile_file=s.profile_file,
        known_compact=s.known_compact,
    )


def make_growth(s: Scenario) -> Optional[GrowthFunction]:
    """Growth function h for variants that take one; None where h is fixed."""
    variant = CriterionVariant(s.variant)
    if variant in POWER_LAW_VARIANTS or variant is CriterionVariant.CGT:
        return None
    return get_growth(s.growth.value, c=s.growth_c, b=s.b, r0=s.r0, path=s.growth_file)


# ---------------------------------------------------------------------------
# compare
# ---------------------------------------------------------------------------

_VERDICT_EXIT = {
    ComparisonStatus.HOLDS: EXIT_OK,
    ComparisonStatus.CONCLUSION_VIOLATED: EXIT_CONCLUSION_VIOLATED,
    ComparisonStatus.HYPOTHESIS_VIOLATED: EXIT_HYPOTHESIS_VIOLATED,
    ComparisonStatus.EMPTY_WINDOW: EXIT_HYPOTHESIS_VIOLATED,
}


def _grid_report(s: Scenario, m: RadialManifold) -> ComparisonReport:
    v = s.compare_variant
    window: Dict[str, Any] = {"grid_step": s.grid_step, "r_max_test": s.r_max_test}
    # Scenario enforces the keys each variant reads
    delta, a, k, H = s.delta or 0.0, s.a or 0.0, s.k or 0.0, s.H or 0.0
    if v is CompareVariant.THM21:
        return comparison.verify_thm21(m, delta, H, **window)
    if v is CompareVariant.THM22:
        return comparison.verify_thm22(m, a, H, **window)
    if v is CompareVariant.MF_BOUNDS:
        return comparison.verify_mf_bounds(m, delta, **window)
    if v is CompareVariant.MF_BOUNDS_K:
        return comparison.verify_mf_bounds_k(m, k, **window)
    return comparison.verify_mf_bounds_a(m, a, **window)


def cmd_compare(s: Scenario) -> Outcome:
    """Grid check of a comparison statement.

    Exit 0 when it holds, 2 when the conclusion fails, 3 when a hypothesis
    fails or the window is empty. The pointwise variants (ibp-chain,
    integrated-riccati) exit 0 or 2 on the sign of their slack.
    """
    m = make_manifold(s)
    v = s.compare_variant
    if v in (CompareVariant.IBP_CHAIN, CompareVariant.INTEGRATED_RICCATI):
        t = s.t or 0.0
        if v is CompareVariant.IBP_CHAIN:
            slack = comparison.verify_ibp_chain(m, s.delta or 0.0, s.H or 0.0, t)
        else:
            slack = comparison.verify_integrated_riccati(m, s.eps, t)
        holds = slack >= -settings.slack_tolerance
        row = slack_row(v.value, slack, holds, s)
        code = EXIT_OK if holds else EXIT_CONCLUSION_VIOLATED
        return Outcome(code, render_slack(v.value, t, slack, holds), [row], row)

    report = _grid_report(s, m)
    return Outcome(
        _VERDICT_EXIT[report.verdict],
        render_comparison(report),
        comparison_rows(report, s),
        comparison_summary(report, s),
    )


# ---------------------------------------------------------------------------
# constants / criterion
# ---------------------------------------------------------------------------


def cmd_constants(s: Scenario) -> Outcome:
    """Compute a variant's constant, its branch and the eps cross-check."""
    params = s.criterion_params()
    report = criteria.constant_report(params, make_growth(s))
    diameter = None
    if params.variant is CriterionVariant.CGT:
        diameter = criteria.cgt_diameter(params.r0 or 0.0, params.nu or 0.0)
    row = constant_row(report, s, diameter)
    return Outcome(EXIT_OK, render_constant(report, diameter), [row], row)


def cmd_criterion(s: Scenario) -> Outcome:
    """Evaluate a criterion; exit 4 when it fires on a non-compact manifold."""
    verdict = criteria.evaluate_criterion(
        make_manifold(s), s.criterion_params(), make_growth(s), s.r_max_test
    )
    row = criterion_row(verdict, s)
    code = EXIT_ALARM if verdict.inconsistent else EXIT_OK
    return Outcome(code, render_verdict(verdict), [row], row)


# ---------------------------------------------------------------------------
# ambrose
# ---------------------------------------------------------------------------


def cmd_ambrose(s: Scenario) -> Outcome:
    """Ambrose-type diagnosis, plus the doubling-sequence check when m0 is set.

    The blow-up trajectory starts at t = 1 with m(1) = m0 and is driven by
    the manifold's radial Ricci curvature.
    """
    m = make_manifold(s)
    report = ambrose.ambrose_diagnosis(m, s.C or 0.0, s.alpha or 0.0, s.t_probe)
    blowup = None
    if s.m0 is not None:
        traj = integrate_riccati_from(
            s.m0,
            BLOWUP_T0,
            ray_ricci(m, RicciKind.PLAIN),
            m.n - 1.0,
            s.t1 + 2.0 + BLOWUP_OVERRUN,
        )
        blowup = ambrose.blowup_sequence_verify(traj, m.n, s.t1)
    row = ambrose_row(report, s, blowup)
    code = EXIT_ALARM if report.inconsistent else EXIT_OK
    return Outcome(code, render_ambrose(report, blowup), [row], row)


COMMANDS: Dict[Workflow, Callable[[Scenario], Outcome]] = {
    Workflow.COMPARE: cmd_compare,
    Workflow.CONSTANTS: cmd_constants,
    Workflow.CRITERION: cmd_criterion,
    Workflow.AMBROSE: cmd_ambrose,
}


def run_scenario(s: Scenario) -> Outcome:
    """Dispatch a scenario to its workflow."""
    logger.debug("scenario.started", workflow=s.workflow.value, variant=s.variant)
    return COMMANDS[s.workflow](s)


# ---------------------------------------------------------------------------
# sweep
# ---------------------------------------------------------------------------


def cmd_sweep(raw: Mapping[str, str]) -> Outcome:
    """Run the scenario at every point of its parameter grid.

    Every point is validated before any is computed. One row per point, in
    lexicographic parameter order; any failing point fails the whole sweep.
    The exit code is the most severe among the points: 4, then 2, then 3.
    """
    points = expand_grid(raw)
    scenarios = [build_scenario(point) for point in points]
    outcomes = run_points(scenarios, run_scenario)
    varied = sorted(k for k, v in raw.items() if "," in v and k not in FILE_KEYS)
    summaries = [o.summary for o in outcomes]
    logger.info("sweep.completed", points=len(scenarios), varied=varied)
    text = render_sweep(varied, summaries, [o.exit_code for o in outcomes])
    codes = {o.exit_code for o in outcomes}
    code = next((c for c in EXIT_SEVERITY if c in codes), EXIT_OK)
    return Outcome(code, text, summaries, {})
