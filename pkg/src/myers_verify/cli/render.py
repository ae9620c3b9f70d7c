"""Human-readable report tables."""

from typing import Any, Dict, List, Optional

from jinja2 import Environment, StrictUndefined, TemplateError, UndefinedError

from myers_verify.models.reports import (
    AmbroseReport,
    BlowupSequenceReport,
    CompactnessVerdict,
    ComparisonReport,
    ConstantReport,
)


def _num(value: Any) -> str:
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, float):
        return format(value, ".10g")
    return str(value)


env = Environment(undefined=StrictUndefined, trim_blocks=True, lstrip_blocks=True)
env.filters["num"] = _num

COMPARISON_TEMPLATE = """\
{{ r.statement }} on {{ r.parameters.manifold }} (n = {{ r.parameters.n }})
  window             [{{ r.window[0] | num }}, {{ r.window[1] | num }}]
  grid points        {{ r.grid | length }}
  hypothesis slack   {{ r.hypothesis_slack | num }}
  conclusion slack   {{ r.conclusion_slack | num }}
  judged slack       {{ r.judged_slack | num }}
{% if r.lower_slack is not none %}
  lower-bound slack  {{ r.lower_slack | num }}
{% endif %}
  verdict            {{ r.verdict.value }}
{% for note in r.notes %}
  note: {{ note }}
{% endfor %}
"""

SLACK_TEMPLATE = """\
{{ statement }} at t = {{ t | num }}
  slack              {{ slack | num }}
  holds              {{ holds | num }}
"""

CONSTANT_TEMPLATE = """\
{{ r.variant }} constant
  value              {{ r.value | num }}
  branch             {{ r.branch }}
{% if r.optimized_epsilon is not none %}
  optimal eps        {{ r.optimized_epsilon | num }}
  optimized value    {{ r.optimized_value | num }}
  cross-check delta  {{ r.cross_check_delta | num }}
{% endif %}
{% if diameter is not none %}
  diameter bound     {{ diameter | num }}
{% endif %}
{% for note in r.notes %}
  note: {{ note }}
{% endfor %}
"""

VERDICT_TEMPLATE = """\
{{ v.variant }} on {{ v.parameters.manifold }} (n = {{ v.parameters.n }})
  constant           {{ v.constant_used | num }} ({{ v.branch }})
  window             [{{ v.window[0] | num }}, {{ v.window[1] | num }}]
  min margin         {{ v.min_margin | num }}
  hypothesis margin  {{ v.hypothesis_margin | num }}
  criterion met      {{ v.criterion_met | num }}
  known compact      {{ v.known_compact | num }}
  conjugate time     {{ v.cross_check | num }}
{% if v.inconsistent %}
  FALSIFICATION ALARM: criterion met on a non-compact manifold
{% endif %}
{% for note in v.notes %}
  note: {{ note }}
{% endfor %}
"""

AMBROSE_TEMPLATE = """\
Ambrose diagnosis on {{ r.parameters.manifold }} (n = {{ r.parameters.n }})
  f' growth slack    {{ r.fprime_slack | num }}
{% for p in r.probes %}
  integral to {{ p.T | num }}  {{ p.integral | num }}
{% endfor %}
  trend              {{ r.trend.value }}
  hypotheses hold    {{ r.hypotheses_hold | num }}
  conjugate time     {{ r.conjugate_time | num }}
  predicted compact  {{ r.predicted_compact | num }}
  known compact      {{ r.known_compact | num }}
{% if r.inconsistent %}
  FALSIFICATION ALARM: compactness predicted on a non-compact manifold
{% endif %}
{% for note in r.notes %}
  note: {{ note }}
{% endfor %}
{% if blowup is not none %}
Doubling sequence from t1 = {{ blowup.t1 | num }} (T = {{ blowup.T | num }})
  status             {{ blowup.status.value }}
  precondition       {{ blowup.precondition_margin | num }}
  blow-up time       {{ blowup.blowup_time | num }}
{% for term in blowup.terms %}
  l = {{ term.ell }}  t = {{ term.t | num }}  -m = {{ term.observed | num }}  \
bound = {{ term.lower_bound | num }}  {{ "ok" if term.satisfied else "FAILS" }}
{% endfor %}
{% for note in blowup.notes %}
  note: {{ note }}
{% endfor %}
{% endif %}
"""


def render(source: str, **context: Any) -> str:
    """Render a report template.

    Raises:
        ValueError: If the template refers to a missing value.
    """
    template = env.from_string(source)
    try:
        return template.render(**context)
    except (TemplateError, UndefinedError) as e:
        raise ValueError(f"Template rendering failed: {e}")


def render_comparison(report: ComparisonReport) -> str:
    return render(COMPARISON_TEMPLATE, r=report)


def render_slack(statement: str, t: float, slack: float, holds: bool) -> str:
    return render(SLACK_TEMPLATE, statement=statement, t=t, slack=slack, holds=holds)


def render_constant(report: ConstantReport, diameter: Optional[float] = None) -> str:
    return render(CONSTANT_TEMPLATE, r=report, diameter=diameter)


def render_verdict(verdict: CompactnessVerdict) -> str:
    return render(VERDICT_TEMPLATE, v=verdict)


def render_ambrose(
    report: AmbroseReport, blowup: Optional[BlowupSequenceReport] = None
) -> str:
    return render(AMBROSE_TEMPLATE, r=report, blowup=blowup)


SWEEP_TEMPLATE = """\
sweep over {{ varied | join(", ") if varied else "a single point" }}: \
{{ rows | length }} point(s)
{% for row in rows %}
  {{ loop.index }}:{% for key in varied %} {{ key }}={{ row[key] | num }}{% endfor %}\
{% if "verdict" in row %} {{ row.verdict }}{% endif %}\
{% if "criterion_met" in row %} criterion_met={{ row.criterion_met | num }}{% endif %}\
{% if "constant" in row %} constant={{ row.constant | num }}{% endif %}\
{% if "trend" in row %} trend={{ row.trend }}{% endif %}\
{% if "slack" in row %} slack={{ row.slack | num }}{% endif %}\
 exit={{ codes[loop.index0] }}
{% endfor %}
"""


def render_sweep(
    varied: List[str], rows: List[Dict[str, Any]], codes: List[int]
) -> str:
    return render(SWEEP_TEMPLATE, varied=varied, rows=rows, codes=codes)
