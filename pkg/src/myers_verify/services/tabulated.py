"""Loader for two-column (r, value) sample files."""

from pathlib import Path

import numpy as np
import structlog

from myers_verify.exceptions import TabulatedFileError

logger = structlog.get_logger(__name__)

MIN_ROWS = 4


def load_samples(path: str | Path) -> tuple[np.ndarray, np.ndarray]:
    """Read whitespace- or comma-separated (r, value) rows.

    Blank lines and ``#`` comments are skipped. Radii must be strictly
    increasing and there must be at least four rows.

    Raises:
        TabulatedFileError: With the 1-based line number of the first bad row.
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise TabulatedFileError(str(path), None, f"cannot read file: {e}")

    radii: list[float] = []
    values: list[float] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.replace(",", " ").split()
        if len(fields) != 2:
            raise TabulatedFileError(
                str(path), lineno, f"expected 2 columns, found {len(fields)}"
            )
        try:
            r, v = float(fields[0]), float(fields[1])
        except ValueError:
            raise TabulatedFileError(str(path), lineno, f"not a number: {line!r}")
        if not (np.isfinite(r) and np.isfinite(v)):
            raise TabulatedFileError(str(path), lineno, "non-finite value")
        if radii and r <= radii[-1]:
            raise TabulatedFileError(
                str(path), lineno, f"r = {r} does not increase (previous {radii[-1]})"
            )
        radii.append(r)
        values.append(v)

    if len(radii) < MIN_ROWS:
        raise TabulatedFileError(
            str(path), None, f"need at least {MIN_ROWS} rows, found {len(radii)}"
        )
    logger.debug("tabulated.loaded", path=str(path), rows=len(radii))
    return np.array(radii), np.array(values)
