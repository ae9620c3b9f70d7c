"""Scenario files: one ``key = value`` per line, ``#`` comments, comma lists."""

import itertools
import math
from pathlib import Path
from typing import Dict, List, Mapping

from pydantic import ValidationError

from myers_verify.exceptions import ScenarioError
from myers_verify.models.scenario import Scenario, Workflow
from myers_verify.settings import settings

RawConfig = Dict[str, str]

# Keys naming sample files; relative paths resolve against the scenario file.
FILE_KEYS = ("profile_file", "weight_file", "growth_file")


def parse_config(text: str, source: str = "<config>") -> RawConfig:
    """Parse scenario text into raw string values.

    Raises:
        ScenarioError: For a line without ``=``, an empty key or value, or a
            repeated key; ``field`` is the key, or ``source:line`` when the
            line has none.
    """
    raw: RawConfig = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        if "=" not in body:
            raise ScenarioError(
                f"{source}:{lineno}", f"expected 'key = value', got {body!r}"
            )
        key, value = (part.strip() for part in body.split("=", 1))
        if not key:
            raise ScenarioError(f"{source}:{lineno}", "empty key")
        if not value:
            raise ScenarioError(key, f"empty value on line {lineno}")
        if key in raw:
            raise ScenarioError(key, f"repeated on line {lineno}")
        raw[key] = value
    return raw


def load_config(path: str | Path) -> RawConfig:
    """Read and parse a scenario file; OSError propagates to the caller."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except UnicodeDecodeError as e:
        raise ScenarioError(str(path), f"not UTF-8: {e}")
    raw = parse_config(text, str(path))
    for key in FILE_KEYS:
        if key in raw and not Path(raw[key]).is_absolute():
            raw[key] = str(path.parent / raw[key])
    return raw


def build_scenario(raw: Mapping[str, str]) -> Scenario:
    """Validate raw values into a Scenario.

    Raises:
        ScenarioError: Naming the first offending key.
    """
    for key, value in raw.items():
        if "," in value and key not in FILE_KEYS:
            raise ScenarioError(key, "lists are only accepted by the sweep command")
    try:
        scenario = Scenario.model_validate(dict(raw))
        if scenario.workflow in (Workflow.CONSTANTS, Workflow.CRITERION):
            scenario.criterion_params()
    except ValidationError as e:
        error = e.errors()[0]
        field = ".".join(str(part) for part in error["loc"]) or "workflow"
        raise ScenarioError(field, error["msg"])
    return scenario


def _sort_key(value: str) -> tuple:
    try:
        number = float(value)
    except ValueError:
        return (1, 0.0, value)
    return (0, number, value) if not math.isnan(number) else (1, 0.0, value)


def expand_grid(raw: Mapping[str, str]) -> List[RawConfig]:
    """Cartesian product of every comma list, in lexicographic parameter order.

    Keys are taken in sorted order and each list's values sorted numerically
    where they parse as numbers, so the point order does not depend on how
    the file was written.

    Raises:
        ScenarioError: For an empty list or a grid larger than
            ``settings.sweep_max_points``.
    """
    keys = sorted(raw)
    axes: List[List[str]] = []
    for key in keys:
        if key in FILE_KEYS:
            axes.append([raw[key]])
            continue
        values = [v.strip() for v in raw[key].split(",") if v.strip()]
        if not values:
            raise ScenarioError(key, "empty list; the grid has no points")
        axes.append(sorted(dict.fromkeys(values), key=_sort_key))

    size = math.prod(len(axis) for axis in axes)
    if size > settings.sweep_max_points:
        raise ScenarioError(
            "sweep", f"grid has {size} points, more than {settings.sweep_max_points}"
        )
    return [dict(zip(keys, point)) for point in itertools.product(*axes)]
