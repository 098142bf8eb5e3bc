import logging
import os
import sys
from typing import Optional

from app.database.db_manager import close_database, init_database

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'

logger = logging.getLogger(__name__)


def configure_logging(level: Optional[str] = None) -> None:
    """Send log records to stderr; stdout is reserved for command output."""
    level = (level or os.getenv("CHEBYGF_LOG_LEVEL", "WARNING")).upper()
    logging.basicConfig(
        level=getattr(logging, level, logging.WARNING),
        format=LOG_FORMAT,
        handlers=[
            logging.StreamHandler(sys.stderr)
        ],
        force=True,
    )


def initialize_app(log_level: Optional[str] = None, cache_path: Optional[str] = None) -> bool:
    """Initialize logging and, when a path is given, the result cache."""
    configure_logging(log_level)
    logger.info("Initializing ChebyGF...")

    cache_ready = False
    if cache_path:
        cache_ready = init_database(cache_path)
        if not cache_ready:
            logger.warning("Continuing without the result cache.")
    else:
        close_database()

    logger.info("Initialization complete.")
    return cache_ready
