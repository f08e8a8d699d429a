"""
Analytic Command
sectorsec analytic --config <path> --out <path> [--weights standard|paper-printed]
Closed-form SOP (and its quadrature reference) over the scenario grid.
"""
import argparse
import asyncio
import logging

from sectorsec.commands.common import add_common_arguments, load_spec, write_gnuplot, write_text
from sectorsec.core.config import get_settings
from sectorsec.services.report import build_result, generate_csv
from sectorsec.tasks.sweep import SweepOptions, run_sweep

logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser("analytic", help="Evaluate the closed-form SOP over the grid")
    add_common_arguments(parser)
    parser.add_argument("--weights", choices=["standard", "paper-printed"], default=None, help="Holtzman weight preset")
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    spec = load_spec(args, overrides={"weights": args.weights})
    options = SweepOptions(analytic=True, exact=True)
    points = asyncio.run(run_sweep(spec, options, workers=get_settings().worker_count()))
    result = build_result(points)
    write_text(args.out, generate_csv(result))
    write_gnuplot(args, spec, result)
    logger.info(f"analytic: {len(result.rows)} rows", extra={"command": "analytic", "scenario": spec.name})
    return 0
