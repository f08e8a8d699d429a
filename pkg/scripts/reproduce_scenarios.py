"""
Run the two bundled reference scenarios end to end.

This script:
1. Loads configs/passive_sectors.toml and configs/colluding_relays.toml
2. Runs analytic, quadrature, preset and Monte Carlo columns for every point
3. Writes <name>.csv, <name>.deviations.csv, <name>.gp and <name>.summary.txt to the output directory
4. Logs the SOP = 1e-2 crossings (passive_sectors) and the 18 dB Monte Carlo values (colluding_relays)

Usage:
    python scripts/reproduce_scenarios.py [--out results] [--trials 1000000] [--seed 20240101]
"""
import argparse
import asyncio
import logging
import sys
from pathlib import Path

# Add parent directory to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from sectorsec.core.config import settings
from sectorsec.core.exceptions import SectorsecException
from sectorsec.services.report import (
    build_result,
    compare_points,
    generate_comparison_csv,
    generate_csv,
    generate_gnuplot,
    render_summary,
    summarize,
)
from sectorsec.services.scenario_file import load_sweep_spec
from sectorsec.tasks.sweep import SweepOptions, run_sweep

logging.basicConfig(level=logging.INFO)
logger = logging.getLogger(__name__)

CONFIG_DIR = Path(__file__).parent.parent / "configs"


async def reproduce(name: str, out_dir: Path, trials: int, seed: int) -> None:
    spec = load_sweep_spec(CONFIG_DIR / f"{name}.toml", overrides={"mc_trials": trials, "seed": seed})
    axis_label = spec.vary.value if spec.vary else None
    options = SweepOptions(analytic=True, exact=True, presets=True, best_case=True, simulate=True)

    points = await run_sweep(spec, options, workers=settings.worker_count())
    result = build_result(points)

    csv_path = out_dir / f"{name}.csv"
    csv_path.write_text(generate_csv(result), encoding="utf-8", newline="\n")
    (out_dir / f"{name}.deviations.csv").write_text(
        generate_comparison_csv(compare_points(points, settings.COMPARE_TOLERANCE_LOG10, settings.COMPARE_FLOOR)),
        encoding="utf-8",
        newline="\n",
    )
    (out_dir / f"{name}.gp").write_text(generate_gnuplot(str(csv_path), result, axis_label), encoding="utf-8")

    summaries = summarize(points, settings.COMPARE_TOLERANCE_LOG10, settings.COMPARE_FLOOR)
    summary = render_summary(spec.name, axis_label, summaries, settings.COMPARE_TOLERANCE_LOG10)
    (out_dir / f"{name}.summary.txt").write_text(summary, encoding="utf-8")
    print(summary)

    for s in summaries:
        logger.info(
            f"{name} {axis_label}={s.axis_value}: analytic crossing {s.crossing_snr_db} dB, "
            f"simulated crossing {s.mc_crossing_snr_db} dB, "
            f"best case {s.best_case_crossing_snr_db} dB, flagged {s.flagged_points}"
        )
    for p in points:
        if p.snr_db == 18.0 and p.mc is not None and name == "colluding_relays":
            logger.info(
                f"{name} {axis_label}={p.axis_value} at 18 dB: mc {p.mc.p_hat:.4g} "
                f"[{p.mc.ci_low:.4g}, {p.mc.ci_high:.4g}], analytic {p.sop_analytic:.4g}"
            )


async def main() -> int:
    parser = argparse.ArgumentParser(description="Run the reference scenarios")
    parser.add_argument("--out", type=Path, default=Path("results"))
    parser.add_argument("--trials", type=int, default=settings.DEFAULT_MC_TRIALS)
    parser.add_argument("--seed", type=int, default=20240101)
    args = parser.parse_args()

    args.out.mkdir(parents=True, exist_ok=True)
    failed = 0
    for name in ("passive_sectors", "colluding_relays"):
        try:
            await reproduce(name, args.out, args.trials, args.seed)
        except SectorsecException as e:
            logger.error(f"{name} failed: {e.code}: {e.message}")
            failed += 1

    logger.info(f"Done: {2 - failed} succeeded, {failed} failed")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(asyncio.run(main()))
