"""Logging configuration for the toolkit."""
import logging
import sys
from typing import Optional

from entbuffer.settings import get_settings


def setup_logging(level: Optional[str] = None):
    """Configure toolkit logging.

    Records go to stderr so that reports and CSV written to stdout stay clean.
    """
    logging.basicConfig(
        level=(level or get_settings().log_level).upper(),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        handlers=[
            logging.StreamHandler(sys.stderr)
        ],
        force=True,
    )
    return None
