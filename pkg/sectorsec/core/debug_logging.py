"""
Debug Logging Utility
Step tracer for sweeps, toggled with ENABLE_DEBUG_LOGGING. Off by default so
that million-trial runs do not pay for per-point formatting.
"""
import logging
import time
from contextlib import contextmanager
from typing import Any, Dict, Iterator, Optional

from sectorsec.core.config import settings

logger = logging.getLogger(__name__)

Context = Optional[Dict[str, Any]]


class DebugLogger:
    """Bracketed [DEBUG] [CATEGORY] [STEP] traces; a disabled instance is a no-op"""

    def __init__(self, enabled: bool = settings.ENABLE_DEBUG_LOGGING):
        self.enabled = enabled

    @staticmethod
    def _render(category: str, step: str, message: str, context: Context) -> str:
        head = f"[DEBUG] [{category}] [{step}] {message}"
        if not context:
            return head
        return head + " | " + " ".join(f"{key}={value}" for key, value in context.items())

    def _emit(self, level: int, category: str, step: str, message: str, context: Context = None) -> None:
        if self.enabled:
            logger.log(level, self._render(category, step, message, context))

    def log_step(self, step: str, message: str, context: Context = None) -> None:
        self._emit(logging.INFO, "STEP", step, message, context)

    def log_point(self, snr_db: float, axis_value: Optional[float], context: Context = None) -> None:
        """One evaluated sweep point"""
        self._emit(
            logging.INFO, "SWEEP", "POINT", f"snr={snr_db} dB axis={axis_value}",
            {"snr_db": snr_db, "axis": axis_value, **(context or {})},
        )

    def log_error(self, step: str, error: Exception, context: Context = None) -> None:
        self._emit(
            logging.ERROR, "ERROR", step, f"{type(error).__name__}: {error}",
            {"error_type": type(error).__name__, **(context or {})},
        )

    @contextmanager
    def timed(self, step: str, context: Context = None) -> Iterator[None]:
        """Trace entry and exit of a block with its wall time in ms"""
        if not self.enabled:
            yield
            return
        started = time.perf_counter()
        self._emit(logging.DEBUG, "TIMED", step, "start", context)
        try:
            yield
        finally:
            elapsed = int((time.perf_counter() - started) * 1000)
            self._emit(logging.DEBUG, "TIMED", step, "done", {**(context or {}), "ms": elapsed})


# Global debug logger instance
debug_logger = DebugLogger()
