import sys
from typing import Optional

from loguru import logger

from config.settings import settings


def configure_logging(level: Optional[str] = None, sink=None) -> None:
    """Replace loguru's default sink with one using the configured format (stderr by default)."""
    logger.remove()
    logger.add(sink or sys.stderr, level=(level or settings.LOG_LEVEL).upper(), format=settings.LOG_FORMAT)
