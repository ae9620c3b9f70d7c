"""Concurrent execution of sweep points."""

from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, Optional, Sequence, TypeVar

import structlog

from myers_verify.settings import settings

logger = structlog.get_logger(__name__)

P = TypeVar("P")
R = TypeVar("R")


def run_points(
    points: Sequence[P], run: Callable[[P], R], workers: Optional[int] = None
) -> List[R]:
    """Run ``run`` on every point and return the results in point order.

    Points share no mutable state, so they may finish in any order; results
    are collected by submission index. The first failure (in point order) is
    re-raised and the points not yet started are cancelled.
    """
    workers = workers or settings.sweep_workers
    if workers <= 1 or len(points) <= 1:
        return [run(p) for p in points]

    logger.debug("sweep.dispatch", points=len(points), workers=workers)
    pool = ThreadPoolExecutor(max_workers=workers, thread_name_prefix="sweep")
    try:
        futures = [pool.submit(run, p) for p in points]
        return [future.result() for future in futures]
    finally:
        pool.shutdown(wait=True, cancel_futures=True)
