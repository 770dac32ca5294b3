"""
Main entry point for teichproj.

Exit codes: 0 on success, 2 for invalid input or configuration, 1 for
any other failure of a computation.
"""

import json
import sys
from typing import Optional, Sequence

import pydantic

from teichproj.cli import build_parser
from teichproj.errors import DomainError, TeichError, ValidationError
from teichproj.logging_config import configure_logging, get_logger
from teichproj.version import __version__

logger = get_logger(__name__)

EXIT_FAILURE = 1
EXIT_INVALID_INPUT = 2


def _report(error: TeichError) -> None:
    print(json.dumps(error.to_dict(), sort_keys=True, default=str), file=sys.stderr)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Parse the command line, run the selected command and return its exit code."""
    args = build_parser().parse_args(argv)
    configure_logging(args.log_level)
    logger.debug("teichproj started", extra={"version": __version__, "command": args.command})

    try:
        return int(args.handler(args))
    except (ValidationError, DomainError) as exc:
        logger.error("Invalid input", extra={"code": exc.code, "details": exc.details})
        _report(exc)
        return EXIT_INVALID_INPUT
    except pydantic.ValidationError as exc:
        error = ValidationError("config", "; ".join(
            f"{'.'.join(str(part) for part in item['loc'])}: {item['msg']}" for item in exc.errors()
        ))
        logger.error("Invalid configuration", extra={"errors": exc.error_count()})
        _report(error)
        return EXIT_INVALID_INPUT
    except TeichError as exc:
        logger.error("Command failed", extra={"code": exc.code, "details": exc.details})
        _report(exc)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
