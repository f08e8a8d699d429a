"""
Simulate Command
sectorsec simulate --config <path> --out <path> --trials <n> --seed <n> [--correlation independent|shared]
Monte Carlo SOP with Wilson intervals over the scenario grid. Budget: about
one second per 10^6 trials per point and worker on a desktop CPU.
"""
import argparse
import asyncio
import logging
import time

from sectorsec.commands.common import (
    add_common_arguments,
    add_simulation_arguments,
    load_spec,
    write_gnuplot,
    write_text,
)
from sectorsec.core.config import get_settings
from sectorsec.services.report import build_result, generate_csv
from sectorsec.tasks.sweep import SweepOptions, run_sweep

logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser("simulate", help="Monte Carlo SOP over the grid")
    add_common_arguments(parser)
    add_simulation_arguments(parser)
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    started = time.perf_counter()
    spec = load_spec(args, overrides={
        "mc_trials": args.trials,
        "seed": args.seed,
        "correlation": args.correlation,
    })
    options = SweepOptions(analytic=False, exact=False, simulate=True)
    points = asyncio.run(run_sweep(spec, options, workers=get_settings().worker_count()))
    result = build_result(points)
    write_text(args.out, generate_csv(result))
    write_gnuplot(args, spec, result)
    logger.info(
        f"simulate: {len(result.rows)} rows",
        extra={
            "command": "simulate",
            "scenario": spec.name,
            "trials": spec.mc_trials,
            "duration_ms": int((time.perf_counter() - started) * 1000),
        },
    )
    return 0
