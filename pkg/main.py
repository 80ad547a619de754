#!/usr/bin/env python3
"""
High-Rank Loci - Main Application
Exact X-ranks for Veronese varieties and rational curves
"""
import logging
import sys

from config.settings import settings
from src.cli.main import run

handlers = [logging.StreamHandler(sys.stderr)]
if settings.log_file:
    handlers.append(logging.FileHandler(settings.log_file))

# Configure logging; standard output carries the JSON results
logging.basicConfig(
    level=getattr(logging, settings.log_level),
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
    handlers=handlers
)

logger = logging.getLogger(__name__)


def main():
    """Main application entry point"""
    logger.debug(f"Starting {settings.app_name} {settings.app_version}")
    try:
        sys.exit(run(sys.argv[1:]))
    except KeyboardInterrupt:
        logger.info("Interrupted")
        sys.exit(130)


if __name__ == "__main__":
    main()
