"""structlog configuration."""

import logging
import sys

import structlog

from myers_verify.settings import settings


def configure_logging(level: str | None = None, fmt: str | None = None) -> None:
    """Install the structlog processor chain.

    Args:
        level: Threshold name (``DEBUG``, ``INFO``, ...); defaults to settings.
        fmt: ``console`` or ``json``; defaults to settings.
    """
    level_name = (level or ("DEBUG" if settings.debug else settings.log_level)).upper()
    renderer: structlog.types.Processor
    if (fmt or settings.log_format) == "json":
        renderer = structlog.processors.JSONRenderer(sort_keys=True)
    else:
        renderer = structlog.dev.ConsoleRenderer(colors=False)

    structlog.configure(
        processors=[
            structlog.contextvars.merge_contextvars,
            structlog.processors.add_log_level,
            structlog.processors.TimeStamper(fmt="iso", utc=True),
            structlog.processors.format_exc_info,
            renderer,
        ],
        wrapper_class=structlog.make_filtering_bound_logger(
            logging.getLevelName(level_name)
        ),
        logger_factory=structlog.PrintLoggerFactory(file=sys.stderr),
        cache_logger_on_first_use=False,
    )
