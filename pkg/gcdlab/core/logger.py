import logging
import os
import sys

_configured = False

def configure_logging(level: str | None = None):
    """
    Configures the root logger with a standardized format.
    Ensures idempotency. Records go to stderr: stdout carries CSV/JSON output.
    """
    global _configured
    if _configured:
        if level:
            logging.getLogger().setLevel(getattr(logging, level.upper(), logging.INFO))
        return

    level_name = (level or os.getenv("LOG_LEVEL", "INFO")).upper()
    logging.basicConfig(
        level=getattr(logging, level_name, logging.INFO),
        format="[%(asctime)s] [%(levelname)s] [%(name)s] - %(message)s",
        datefmt="%Y-%m-%d %H:%M:%S",
        handlers=[logging.StreamHandler(sys.stderr)],
        force=True
    )
    _configured = True

def get_logger(name: str) -> logging.Logger:
    """
    Returns a logger instance. Ensures logging is configured.
    """
    if not _configured:
        configure_logging()
    return logging.getLogger(name)
