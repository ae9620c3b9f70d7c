"""Quadrature and one-dimensional minimization helpers."""

import math
import warnings
from typing import Callable, NamedTuple

from scipy.integrate import IntegrationWarning, quad

INV_PHI = (math.sqrt(5) - 1) / 2  # 1 / phi
INV_PHI_SQUARE = (3 - math.sqrt(5)) / 2  # 1 / phi^2


def quad_silent(
    func: Callable[[float], float], a: float, b: float, limit: int = 200
) -> float:
    """Adaptive Gauss-Kronrod quadrature on [a, b] without warning noise."""
    if b <= a:
        return 0.0
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", category=IntegrationWarning)
        value, _ = quad(func, a, b, limit=limit)
    return float(value)


class GoldenSectionResult(NamedTuple):
    argmin: float
    minimum: float
    iterations: int


def golden_section_minimize(
    func: Callable[[float], float],
    lower: float,
    upper: float,
    tol: float = 1e-12,
    log_scale: bool = False,
) -> GoldenSectionResult:
    """Golden-section search for the minimum of a unimodal function.

    Args:
        func: Objective.
        lower: Left end of the bracket.
        upper: Right end of the bracket.
        tol: Width of the final bracket (in log-space when ``log_scale``).
        log_scale: Search over log(x); useful when the bracket spans decades.

    Returns:
        The bracket midpoint, its function value and the iteration count.
    """
    if log_scale:
        if not 0 < lower < upper:
            raise ValueError(
                f"log-scale bracket needs 0 < lower < upper, got {lower}, {upper}"
            )
        objective = lambda y: func(math.exp(y))  # noqa: E731
        a, b = math.log(lower), math.log(upper)
    else:
        objective = func
        a, b = min(lower, upper), max(lower, upper)

    h = b - a
    n = max(1, int(math.ceil(math.log(tol / h) / math.log(INV_PHI)))) if h > tol else 0

    c = a + INV_PHI_SQUARE * h
    d = a + INV_PHI * h
    yc = objective(c)
    yd = objective(d)
    for _ in range(n):
        if yc < yd:
            b = d
            d = c
            yd = yc
            h = INV_PHI * h
            c = a + INV_PHI_SQUARE * h
            yc = objective(c)
        else:
            a = c
            c = d
            yc = yd
            h = INV_PHI * h
            d = a + INV_PHI * h
            yd = objective(d)

    mid = 0.5 * (a + b)
    x = math.exp(mid) if log_scale else mid
    return GoldenSectionResult(argmin=x, minimum=func(x), iterations=n)
