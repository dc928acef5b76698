import os
import logging
import sys
from logging.handlers import RotatingFileHandler

# Global logger configuration
LOG_DIRECTORY = "logs"
LOG_FILENAME = "gr_toolkit.log"
LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
MAX_LOG_SIZE = 10 * 1024 * 1024  # 10 MB
BACKUP_COUNT = 5


def setup_logging(level=None, log_directory=None):
    """Setup application-wide logging configuration"""
    root_logger = logging.getLogger()

    # Clear existing handlers
    for handler in list(root_logger.handlers):
        root_logger.removeHandler(handler)

    root_logger.setLevel(logging.DEBUG)

    console_level = _resolve_level(level)
    console_handler = logging.StreamHandler(sys.stdout)
    console_handler.setLevel(console_level)
    console_handler.setFormatter(logging.Formatter(LOG_FORMAT))
    root_logger.addHandler(console_handler)

    directory = log_directory or LOG_DIRECTORY
    try:
        os.makedirs(directory, exist_ok=True)
        file_handler = RotatingFileHandler(
            os.path.join(directory, LOG_FILENAME),
            maxBytes=MAX_LOG_SIZE,
            backupCount=BACKUP_COUNT
        )
        file_handler.setLevel(logging.DEBUG)
        file_handler.setFormatter(logging.Formatter(LOG_FORMAT))
        root_logger.addHandler(file_handler)
    except OSError as e:
        # Read-only checkouts still get console logging
        root_logger.warning(f"File logging disabled: {str(e)}")

    return root_logger


def _resolve_level(level):
    if level is None:
        return logging.INFO
    if isinstance(level, int):
        return level
    resolved = logging.getLevelName(str(level).upper())
    return resolved if isinstance(resolved, int) else logging.INFO


# Get a module-specific logger
def get_logger(name):
    """Get a logger for a specific module"""
    return logging.getLogger(name)
