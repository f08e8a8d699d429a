"""
sectorsec - Command Line Entry Point
"""
import json
import logging
import sys
from typing import List, Optional

import pydantic

from sectorsec.commands import build_parser
from sectorsec.core.debug_logging import debug_logger
from sectorsec.core.exceptions import SectorsecException
from sectorsec.core.logging import setup_logging
from sectorsec.services.scenario_file import validation_error_from_pydantic

logger = logging.getLogger(__name__)


def _report(exc: SectorsecException, command: Optional[str]) -> int:
    """Log the raw error, print a one-line summary and return the exit code"""
    error_details_raw = {
        "error_type": type(exc).__name__,
        "code": exc.code,
        "message": exc.message,
        "details": exc.details,
        "command": command,
        "timestamp": exc.timestamp.isoformat(),
    }
    logger.error(f"[CLI] Command failed (RAW ERROR): {json.dumps(error_details_raw, indent=2, default=str)}")
    print(f"error: {exc.code}: {exc.message}", file=sys.stderr)
    return exc.exit_code


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    try:
        setup_logging(args.log_level)
        debug_logger.log_step("CLI", f"Running {args.command}", {"config": str(args.config), "out": args.out})
        return args.handler(args)
    except SectorsecException as e:
        return _report(e, args.command)
    except pydantic.ValidationError as e:
        # Settings read from the environment (e.g. SECTORSEC_THREADS=-1)
        return _report(validation_error_from_pydantic(e, "invalid settings"), args.command)


def run() -> None:
    """Console script entry point"""
    sys.exit(main())


if __name__ == "__main__":
    run()
