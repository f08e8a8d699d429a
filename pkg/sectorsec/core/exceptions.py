"""
Custom Exceptions
"""
from datetime import datetime, timezone
from typing import Optional, Dict, Any, List


class SectorsecException(Exception):
    """Base exception for sectorsec; exit_code is what the CLI returns"""

    def __init__(
        self,
        code: str,
        message: str,
        exit_code: int = 1,
        details: Optional[Dict[str, Any]] = None,
    ):
        self.code = code
        self.message = message
        self.exit_code = exit_code
        self.details = details or {}
        self.timestamp = datetime.now(timezone.utc)
        super().__init__(self.message)


class ValidationError(SectorsecException):
    """Configuration or argument validation error (exit 2)"""

    def __init__(self, message: str, fields: Optional[List[str]] = None, details: Optional[Dict[str, Any]] = None):
        error_details = dict(details or {})
        error_details["fields"] = list(fields or [])
        super().__init__("validation_error", message, 2, error_details)

    @property
    def fields(self) -> List[str]:
        return self.details["fields"]


class ConfigParseError(SectorsecException):
    """Unreadable or malformed scenario file (exit 2)"""

    def __init__(self, path: str, message: str, line: Optional[int] = None, column: Optional[int] = None):
        details: Dict[str, Any] = {"path": path}
        if line is not None:
            details["line"] = line
        if column is not None:
            details["column"] = column
        location = f"{path}:{line}" if line is not None else path
        super().__init__("config_parse_error", f"{location}: {message}", 2, details)


class DomainError(SectorsecException, ValueError):
    """Math operation evaluated outside its domain (exit 3)"""

    def __init__(self, operation: str, message: str, **values: Any):
        super().__init__("domain_error", f"{operation}: {message}", 3, {"operation": operation, **values})


class NumericError(SectorsecException):
    """Numeric failure during evaluation (exit 3)"""

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__("numeric_error", message, 3, details)


class QuadratureError(NumericError):
    """Adaptive quadrature did not reach the requested tolerance"""

    def __init__(
        self,
        message: str,
        estimate: Optional[float] = None,
        abserr: Optional[float] = None,
        limit: Optional[int] = None,
    ):
        details: Dict[str, Any] = {}
        if estimate is not None:
            details["estimate"] = estimate
        if abserr is not None:
            details["abserr"] = abserr
        if limit is not None:
            details["limit"] = limit
        super().__init__(message, details)
