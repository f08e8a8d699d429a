"""
Shared helpers for CLI commands: common arguments, scenario loading and output writing
"""
import argparse
import logging
import sys
from pathlib import Path
from typing import Any, Dict, Optional

from sectorsec.models.schemas import SweepResult, SweepSpec
from sectorsec.services.report import generate_gnuplot
from sectorsec.services.scenario_file import load_sweep_spec

logger = logging.getLogger(__name__)


def add_common_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", required=True, type=Path, help="Scenario file (flat TOML key = value)")
    parser.add_argument("--out", required=True, help="CSV output path, '-' for stdout")
    parser.add_argument("--gnuplot", type=Path, default=None, help="Also write a gnuplot script for the CSV")
    parser.add_argument("--log-level", default=None, help="Override LOG_LEVEL")


def add_simulation_arguments(parser: argparse.ArgumentParser, trials_required: bool = False) -> None:
    parser.add_argument("--trials", type=int, required=trials_required, default=None, help="Monte Carlo trials per point")
    parser.add_argument("--seed", type=int, default=None, help="Base seed for the random streams")
    parser.add_argument(
        "--correlation",
        choices=["independent", "shared"],
        default=None,
        help="Independent draws for gamma_d and gamma_q, or shared source-side gains",
    )


def load_spec(args: argparse.Namespace, overrides: Optional[Dict[str, Any]] = None) -> SweepSpec:
    spec = load_sweep_spec(args.config, overrides=overrides)
    if args.out != "-":
        spec = spec.model_copy(update={"output_path": Path(args.out)})
    return spec


def axis_label(spec: SweepSpec) -> Optional[str]:
    return spec.vary.value if spec.vary is not None else None


def write_text(target: str, text: str) -> None:
    """Write with '\\n' line endings regardless of platform"""
    if target == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    path = Path(target)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(text)
    logger.info(f"Wrote {path}")


def write_gnuplot(args: argparse.Namespace, spec: SweepSpec, result: SweepResult) -> None:
    if args.gnuplot is None:
        return
    csv_path = "-" if args.out == "-" else str(Path(args.out))
    write_text(str(args.gnuplot), generate_gnuplot(csv_path, result, axis_label(spec)))
