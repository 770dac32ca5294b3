"""
Logging configuration for teich-projections.

Command results go to stdout, so log records are written to stderr.
"""

import logging
import sys
from typing import Any, Optional

from teichproj.config import get_settings


def configure_logging(level: Optional[str] = None) -> None:
    """Configure the root logger for the application."""
    settings = get_settings()

    logging.basicConfig(
        level=getattr(logging, (level or settings.log_level).upper()),
        format="%(asctime)s %(levelname)s %(name)s %(message)s",
        stream=sys.stderr,
    )


def get_logger(name: str) -> logging.Logger:
    """
    Get a logger instance with structured logging support.

    Usage:
        logger = get_logger(__name__)
        logger.info("Projection solved", extra={"t_star": 0.17, "distance": 0.3})
    """
    return logging.getLogger(name)


class StructuredLogAdapter(logging.LoggerAdapter):
    """
    Adapter that adds structured context to all log messages.

    Usage:
        logger = StructuredLogAdapter(get_logger(__name__), {"experiment": "contract"})
        logger.info("message", extra={"key": "value"})
    """

    def __init__(
        self,
        logger: logging.Logger,
        extra: Optional[dict[str, Any]] = None,
    ):
        super().__init__(logger, extra or {})

    def process(
        self,
        msg: str,
        kwargs: Any,
    ) -> tuple[str, Any]:
        """Add default extra fields to kwargs."""
        extra = kwargs.get("extra", {})
        extra.update(self.extra)
        kwargs["extra"] = extra
        return msg, kwargs


def create_run_logger(
    logger: logging.Logger,
    experiment_id: Optional[str] = None,
    seed: Optional[int] = None,
) -> StructuredLogAdapter:
    """
    Create a logger bound to one experiment run.

    Usage:
        run_logger = create_run_logger(logger, experiment_id="contract", seed=7)
        run_logger.info("Row complete")
    """
    extra: dict[str, Any] = {}
    if experiment_id:
        extra["experiment_id"] = experiment_id
    if seed is not None:
        extra["seed"] = seed

    return StructuredLogAdapter(logger, extra)
