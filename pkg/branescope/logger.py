"""
Logging helpers for branescope.

Reports go to stdout; everything logged here goes to stderr.
"""
import logging
import sys

ROOT_LOGGER = "branescope"
LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def get_logger(name: str = ROOT_LOGGER) -> logging.Logger:
    """
    Get a logger below the branescope root.

    Args:
        name: Module name, usually __name__

    Returns:
        logging.Logger instance
    """
    if name != ROOT_LOGGER and not name.startswith(ROOT_LOGGER + "."):
        name = f"{ROOT_LOGGER}.{name}"
    return logging.getLogger(name)


def configure_logging(level: str = "WARNING"):
    """
    Attach a stderr handler to the branescope root logger.

    Safe to call more than once; the handler is installed only once.

    Args:
        level: Logging level name
    """
    root = logging.getLogger(ROOT_LOGGER)
    root.setLevel(level.upper())

    if not any(getattr(h, "_branescope", False) for h in root.handlers):
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter(LOG_FORMAT))
        handler._branescope = True
        root.addHandler(handler)


def log_error(title: str, message: str):
    """
    Record a caught failure.

    Args:
        title: Short description of what failed
        message: Error details
    """
    get_logger().error("%s: %s", title, message)
