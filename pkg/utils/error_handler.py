"""
Error hierarchy and centralized error handling for the GR toolkit.
Maps toolkit failures to diagnostics and CLI exit statuses.
"""

import functools
import traceback
from datetime import datetime
from typing import Any, Callable, Dict, List, Optional

from utils.logging_config import get_logger

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_PROPERTY_FAILURE = 1
EXIT_USAGE = 2


class ToolkitError(Exception):
    """Base class for every error raised by the toolkit"""

    default_code = "toolkit_error"

    def __init__(self, message: str, code: Optional[str] = None, **details: Any):
        super().__init__(message)
        self.code = code or self.default_code
        self.details = details

    def to_dict(self) -> Dict[str, Any]:
        return {
            'type': type(self).__name__,
            'code': self.code,
            'message': str(self),
            'details': {k: str(v) for k, v in sorted(self.details.items())}
        }


class QuiverError(ToolkitError):
    default_code = "invalid_quiver"


class StringError(ToolkitError):
    default_code = "invalid_string"


class MeasureError(ToolkitError):
    default_code = "invalid_measure"


class RepresentationError(ToolkitError):
    default_code = "invalid_representation"


class ClassificationError(ToolkitError):
    default_code = "classification"


class EngineError(ToolkitError):
    default_code = "engine"


class PropertyError(ToolkitError):
    default_code = "unknown_property"


class ReportError(ToolkitError):
    default_code = "unwritable"


class UsageError(ToolkitError):
    default_code = "usage"


class ErrorHandler:
    """Centralized error handling and exit-status mapping"""

    # Diagnostics shown to CLI users, keyed by error code
    USER_MESSAGES = {
        'cyclic_orientation': "The orientation word must contain both '+' and '-' signs.",
        'invalid_endpoint': "An arrow refers to a vertex outside the quiver.",
        'not_string_algebra': "The quiver with its relations is not a string algebra.",
        'unreduced': "The word contains a letter followed by its own inverse.",
        'non_composable': "Consecutive letters do not compose as a walk.",
        'unknown_arrow': "The word uses an arrow that the quiver does not have.",
        'unrealized_measure': "No enumerated module realizes the given measure.",
        'decomposable': "The representation is decomposable.",
        'usage': "Invalid command line usage.",
        'unwritable': "The output path cannot be written.",
    }

    def __init__(self):
        self.error_count = 0
        self.last_error_time = None
        self.errors: List[Dict[str, Any]] = []

    def log_error(self, error: Exception, context: Dict[str, Any] = None, severity: str = "error"):
        """Log error with full context"""
        self.error_count += 1
        self.last_error_time = datetime.now()
        entry = {
            'type': type(error).__name__,
            'message': str(error),
            'context': context or {},
            'severity': severity,
        }
        if isinstance(error, ToolkitError):
            entry['code'] = error.code
        self.errors.append(entry)

        if severity == "warning":
            logger.warning(f"{entry['type']}: {entry['message']} context={entry['context']}")
        elif isinstance(error, ToolkitError):
            logger.error(f"{entry['type']}[{error.code}]: {entry['message']} context={entry['context']}")
        else:
            logger.error(f"{entry['type']}: {entry['message']}\n{traceback.format_exc()}")

    def get_user_message(self, error: Exception) -> str:
        """Get a one-line diagnostic for an error"""
        if isinstance(error, ToolkitError):
            hint = self.USER_MESSAGES.get(error.code)
            return f"error [{error.code}]: {error}" + (f" ({hint})" if hint else "")
        return f"error [internal]: {type(error).__name__}: {error}"

    def exit_status(self, error: Exception) -> int:
        """Exit status for an error that aborted a CLI run.

        Property failures never raise, so every aborted run is a usage or
        input problem.
        """
        return EXIT_USAGE


def safe_execute(func: Callable = None, error_handler: ErrorHandler = None, reraise: bool = True,
                 default: Any = None):
    """Decorator that logs and records failures of the wrapped callable"""

    def decorator(f):
        @functools.wraps(f)
        def wrapper(*args, **kwargs):
            try:
                return f(*args, **kwargs)
            except Exception as e:
                handler = error_handler or globals()['error_handler']
                handler.log_error(e, context={'function': f.__name__})
                if reraise:
                    raise
                return default
        return wrapper

    if func is not None:
        return decorator(func)
    return decorator


# Global error handler instance
error_handler = ErrorHandler()
