"""
Compare Command
sectorsec compare --config <path> --out <path> --trials <n> --seed <n> [--tolerance <log10>]
Runs analytic and Monte Carlo columns side by side, writes the sweep CSV, a
per-point deviation CSV next to it, and prints a summary per curve.
"""
import argparse
import asyncio
import logging
import sys
from pathlib import Path

from sectorsec.commands.common import (
    add_common_arguments,
    add_simulation_arguments,
    axis_label,
    load_spec,
    write_gnuplot,
    write_text,
)
from sectorsec.core.config import get_settings
from sectorsec.services.report import (
    build_result,
    compare_points,
    generate_comparison_csv,
    generate_csv,
    render_summary,
    summarize,
)
from sectorsec.tasks.sweep import SweepOptions, run_sweep

logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser("compare", help="Analytic vs Monte Carlo report")
    add_common_arguments(parser)
    add_simulation_arguments(parser)
    parser.add_argument("--tolerance", type=float, default=None, help="Max |log10 analytic - log10 mc| before a point is flagged")
    parser.add_argument("--weights", choices=["standard", "paper-printed"], default=None, help="Preset for the sop_analytic column")
    parser.set_defaults(handler=run)


def deviation_path(out: str) -> str:
    if out == "-":
        return "-"
    path = Path(out)
    return str(path.with_name(f"{path.stem}.deviations.csv"))


def run(args: argparse.Namespace) -> int:
    settings = get_settings()
    tolerance = args.tolerance if args.tolerance is not None else settings.COMPARE_TOLERANCE_LOG10
    spec = load_spec(args, overrides={
        "mc_trials": args.trials,
        "seed": args.seed,
        "correlation": args.correlation,
        "weights": args.weights,
    })
    options = SweepOptions(analytic=True, exact=True, presets=True, best_case=True, simulate=True)
    points = asyncio.run(run_sweep(spec, options, workers=settings.worker_count()))

    result = build_result(points)
    write_text(args.out, generate_csv(result))
    write_gnuplot(args, spec, result)

    compared = compare_points(points, tolerance, settings.COMPARE_FLOOR)
    if args.out != "-":
        write_text(deviation_path(args.out), generate_comparison_csv(compared))

    summaries = summarize(points, tolerance, settings.COMPARE_FLOOR)
    summary = render_summary(spec.name, axis_label(spec), summaries, tolerance)
    stream = sys.stderr if args.out == "-" else sys.stdout
    stream.write(summary)
    stream.flush()

    flagged = sum(s.flagged_points for s in summaries)
    logger.info(
        f"compare: {len(compared)} points compared, {flagged} flagged",
        extra={"command": "compare", "scenario": spec.name, "trials": spec.mc_trials},
    )
    return 0
