"""Command-line entry point."""
import json
import logging
import sys
from typing import List, Optional

from pydantic import ValidationError

from entbuffer.cli.router import build_parser
from entbuffer.core.errors import (
    AnalyticsUnavailableError,
    DegenerateSystemError,
    DomainError,
    InsufficientSamplesError,
)
from entbuffer.logging_config import setup_logging

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_CONFIG = 2
EXIT_DEGENERATE = 3


def _describe_validation(error: ValidationError) -> str:
    lines = []
    for item in error.errors():
        location = ".".join(str(part) for part in item["loc"]) or "(root)"
        lines.append(f"  {location}: {item['msg']}")
    return "Invalid configuration:\n" + "\n".join(lines)


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    setup_logging(args.log_level)
    try:
        return args.handler(args)
    except json.JSONDecodeError as e:
        logger.error(f"Malformed JSON at line {e.lineno}, column {e.colno}: {e.msg}")
        return EXIT_CONFIG
    except ValidationError as e:
        logger.error(_describe_validation(e))
        return EXIT_CONFIG
    except FileNotFoundError as e:
        logger.error(f"File not found: {e.filename}")
        return EXIT_CONFIG
    except (DegenerateSystemError, AnalyticsUnavailableError, InsufficientSamplesError) as e:
        logger.error(f"Degenerate configuration: {e}")
        return EXIT_DEGENERATE
    except DomainError as e:
        logger.error(f"Invalid input: {e}")
        return EXIT_CONFIG


def main_entry():
    sys.exit(main())


if __name__ == "__main__":
    sys.exit(main())
