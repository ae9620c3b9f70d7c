"""CSV rows and atomic CSV writing.

Every row echoes the scenario's parameters so a CSV file describes itself.
"""

import csv
import math
import os
import tempfile
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Sequence

from myers_verify.models.reports import (
    AmbroseReport,
    BlowupSequenceReport,
    CompactnessVerdict,
    ComparisonReport,
    ConstantReport,
)
from myers_verify.models.scenario import Scenario
from myers_verify.settings import settings

Row = Dict[str, Any]

CRITERION_COLUMNS = (
    "variant",
    "n",
    "delta",
    "a",
    "k",
    "b",
    "r0",
    "eps",
    "eps1",
    "C",
    "min_margin",
    "criterion_met",
    "known_compact",
    "conjugate_time",
    "notes",
)


def format_value(value: Any) -> str:
    """CSV cell text: reals with ``csv_digits`` significant digits."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return format(value, f".{settings.csv_digits}g")
    if isinstance(value, (list, tuple)):
        return "; ".join(format_value(v) for v in value)
    return str(value)


def columns_of(rows: Sequence[Row], leading: Sequence[str] = ()) -> List[str]:
    """Leading columns, then every other key in first-seen order."""
    columns = list(leading)
    for row in rows:
        for key in row:
            if key not in columns:
                columns.append(key)
    return columns


def write_csv(
    path: str | Path, rows: Sequence[Row], leading: Sequence[str] = ()
) -> None:
    """Write rows to ``path`` through a temporary file and an atomic rename.

    A failure leaves no partial file behind.
    """
    path = Path(path)
    columns = columns_of(rows, leading)
    fd, tmp = tempfile.mkstemp(
        dir=path.parent, prefix=f".{path.name}.", suffix=".tmp"
    )
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as handle:
            writer = csv.writer(handle, lineterminator="\n")
            writer.writerow(columns)
            for row in rows:
                writer.writerow([format_value(row.get(c)) for c in columns])
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _with_echo(row: Row, scenario: Scenario) -> Row:
    """Append scenario fields not already present in ``row``."""
    for key, value in scenario.echo().items():
        row.setdefault(key, value)
    return row


def comparison_rows(report: ComparisonReport, scenario: Scenario) -> List[Row]:
    """One row per grid node."""
    rows = []
    for point in report.grid:
        rows.append(
            _with_echo(
                {
                    "t": point.t,
                    "lhs": point.lhs,
                    "rhs": point.rhs,
                    "hypothesis_margin": point.hypothesis_margin,
                    "verdict": report.verdict.value,
                },
                scenario,
            )
        )
    return rows


def comparison_summary(report: ComparisonReport, scenario: Scenario) -> Row:
    """One row per report, for sweeps."""
    return _with_echo(
        {
            "statement": report.statement,
            "verdict": report.verdict.value,
            "hypothesis_slack": report.hypothesis_slack,
            "conclusion_slack": report.conclusion_slack,
            "judged_slack": report.judged_slack,
            "lower_slack": report.lower_slack,
            "window_start": report.window[0],
            "window_end": report.window[1],
            "notes": report.notes,
        },
        scenario,
    )


def slack_row(statement: str, slack: float, holds: bool, scenario: Scenario) -> Row:
    """Row for the pointwise checks that return a single slack."""
    return _with_echo(
        {"statement": statement, "slack": slack, "holds": holds}, scenario
    )


def constant_row(
    report: ConstantReport, scenario: Scenario, diameter: Optional[float] = None
) -> Row:
    row: Row = {
        "variant": report.variant,
        "constant": report.value,
        "branch": report.branch,
        "optimized_epsilon": report.optimized_epsilon,
        "optimized_value": report.optimized_value,
        "cross_check_delta": report.cross_check_delta,
    }
    if diameter is not None:
        row["diameter_bound"] = diameter
    row["notes"] = report.notes
    return _with_echo(row, scenario)


def criterion_row(verdict: CompactnessVerdict, scenario: Scenario) -> Row:
    """Row led by CRITERION_COLUMNS; ``C`` is the constant the variant used."""
    params = verdict.parameters
    row: Row = {
        "variant": verdict.variant,
        "n": scenario.n,
        "delta": params.get("delta"),
        "a": params.get("a"),
        "k": params.get("k"),
        "b": params.get("b"),
        "r0": params.get("r0"),
        "eps": params.get("eps"),
        "eps1": params.get("eps1"),
        "C": verdict.constant_used,
        "min_margin": verdict.min_margin,
        "criterion_met": verdict.criterion_met,
        "known_compact": verdict.known_compact,
        "conjugate_time": verdict.cross_check,
        "notes": verdict.notes,
        "branch": verdict.branch,
        "hypothesis_margin": verdict.hypothesis_margin,
        "inconsistent": verdict.inconsistent,
        "window_start": verdict.window[0],
        "window_end": verdict.window[1],
    }
    return _with_echo(row, scenario)


def ambrose_row(
    report: AmbroseReport,
    scenario: Scenario,
    blowup: Optional[BlowupSequenceReport] = None,
) -> Row:
    row: Row = {
        "fprime_slack": report.fprime_slack,
        "fprime_condition_holds": report.fprime_condition_holds,
    }
    for i, probe in enumerate(report.probes, start=1):
        row[f"probe{i}_T"] = probe.T
        row[f"probe{i}_integral"] = probe.integral
    row.update(
        {
            "trend": report.trend.value,
            "hypotheses_hold": report.hypotheses_hold,
            "conjugate_time": report.conjugate_time,
            "predicted_compact": report.predicted_compact,
            "known_compact": report.known_compact,
            "inconsistent": report.inconsistent,
        }
    )
    notes: List[str] = list(report.notes)
    if blowup is not None:
        row.update(
            {
                "blowup_status": blowup.status.value,
                "blowup_time": blowup.blowup_time,
                "precondition_margin": blowup.precondition_margin,
                "sequence_terms": len(blowup.terms),
                "sequence_satisfied": sum(term.satisfied for term in blowup.terms),
            }
        )
        notes.extend(blowup.notes)
    row["notes"] = notes
    return _with_echo(row, scenario)


def leading_for(rows: Iterable[Row]) -> Sequence[str]:
    """Criterion rows lead with the documented column set."""
    first = next(iter(rows), None)
    if first is not None and "criterion_met" in first:
        return CRITERION_COLUMNS
    return ()
