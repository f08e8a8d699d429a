"""
Logging Configuration
"""
import logging
import sys
import json
from typing import Any, Dict, Optional
from sectorsec.core.config import settings

# Extra record attributes promoted into the structured payload
CONTEXT_FIELDS = ("command", "scenario", "snr_db", "axis_value", "trials", "duration_ms")


class StructuredFormatter(logging.Formatter):
    """Formatter that carries sweep context (command, snr_db, axis_value...) into each record"""

    def __init__(self, json_output: bool = False):
        super().__init__()
        self.json_output = json_output

    def format(self, record: logging.LogRecord) -> str:
        log_data: Dict[str, Any] = {
            "timestamp": self.formatTime(record),
            "level": record.levelname,
            "logger": record.name,
            "message": record.getMessage(),
        }

        for field in CONTEXT_FIELDS:
            if hasattr(record, field):
                log_data[field] = getattr(record, field)

        if record.exc_info:
            log_data["exception"] = self.formatException(record.exc_info)

        if self.json_output:
            return json.dumps(log_data, default=str)

        # Human-readable format for dev
        parts = [f"[{log_data['timestamp']}]", log_data["level"], log_data["logger"]]
        if "command" in log_data:
            parts.append(f"cmd={log_data['command']}")
        if "snr_db" in log_data:
            parts.append(f"snr_db={log_data['snr_db']}")
        if "axis_value" in log_data:
            parts.append(f"axis={log_data['axis_value']}")
        parts.append(log_data["message"])
        if "exception" in log_data:
            parts.append(log_data["exception"])
        return " - ".join(str(p) for p in parts)


def setup_logging(level: Optional[str] = None) -> None:
    """Setup structured logging on stderr; stdout is reserved for command output"""
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(StructuredFormatter(json_output=settings.ENVIRONMENT == "prod"))

    logging.basicConfig(
        level=getattr(logging, (level or settings.LOG_LEVEL).upper(), logging.INFO),
        handlers=[handler],
        force=True,
    )

    # Set third-party loggers to WARNING
    logging.getLogger("asyncio").setLevel(logging.WARNING)
