"""
Sweep Tasks
Evaluates every (axis value, SNR) point of a SweepSpec on a bounded worker pool.
Rows are gathered and sorted before they are returned, so output never depends
on scheduling.
"""
import asyncio
import logging
import time
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional

from pydantic import BaseModel

from sectorsec.core.config import settings
from sectorsec.core.debug_logging import debug_logger
from sectorsec.core.exceptions import NumericError, SectorsecException
from sectorsec.models.schemas import (
    HoltzmanWeights,
    PAPER_PRINTED_WEIGHTS,
    PointResult,
    STANDARD_WEIGHTS,
    ScenarioConfig,
    SopMethod,
    SweepSpec,
)
from sectorsec.services.montecarlo import estimate_sop
from sectorsec.services.network_model import derive_all, sop_inputs
from sectorsec.services.secrecy import sop, sop_best_case

logger = logging.getLogger(__name__)


class SweepOptions(BaseModel):
    """Which columns a sweep evaluates"""
    analytic: bool = True
    exact: bool = True
    presets: bool = False
    best_case: bool = False
    simulate: bool = False


def evaluate_point(
    axis_value: Optional[int],
    config: ScenarioConfig,
    spec: SweepSpec,
    options: SweepOptions,
) -> PointResult:
    """All requested SOP values at one scenario point"""
    started = time.perf_counter()
    result = PointResult(snr_db=config.snr_db, axis_value=axis_value)
    try:
        if options.analytic or options.exact or options.presets or options.best_case:
            derived = derive_all(config)
            inputs = sop_inputs(config, derived)
            weights = HoltzmanWeights.preset(spec.weights_choice)
            mode = config.capacity_mode
            if options.analytic:
                result.sop_analytic = sop(inputs, SopMethod.HOLTZMAN, weights, mode)
            if options.exact:
                result.sop_exact = sop(inputs, SopMethod.EXACT, capacity_mode=mode)
            if options.presets:
                result.sop_standard = sop(inputs, SopMethod.HOLTZMAN, STANDARD_WEIGHTS, mode)
                result.sop_paper_printed = sop(inputs, SopMethod.HOLTZMAN, PAPER_PRINTED_WEIGHTS, mode)
            if options.best_case:
                result.sop_best_case = sop_best_case(derived.gamma_d, config.rate_threshold)
        if options.simulate:
            with debug_logger.timed("ESTIMATE_SOP", {"snr_db": config.snr_db, "trials": spec.mc_trials}):
                result.mc = estimate_sop(config, spec.mc_trials, spec.seed, spec.correlation)
    except SectorsecException:
        raise
    except (ArithmeticError, ValueError) as e:
        debug_logger.log_error("EVALUATE_POINT", e, {"snr_db": config.snr_db, "axis": axis_value})
        raise NumericError(
            f"evaluation failed at snr_db={config.snr_db}, axis={axis_value}: {e}",
            {"snr_db": config.snr_db, "axis_value": axis_value, "error_type": type(e).__name__},
        ) from e

    debug_logger.log_point(config.snr_db, axis_value, {"ms": int((time.perf_counter() - started) * 1000)})
    return result


async def run_sweep(
    spec: SweepSpec,
    options: SweepOptions,
    workers: Optional[int] = None,
) -> List[PointResult]:
    """Evaluate all points concurrently; results come back sorted by (axis value, SNR)"""
    workers = workers or settings.worker_count()
    points = list(spec.points())
    started = time.perf_counter()
    logger.info(
        f"Sweeping {len(points)} points on {workers} worker(s)",
        extra={"scenario": spec.name, "trials": spec.mc_trials if options.simulate else None},
    )

    loop = asyncio.get_running_loop()
    with ThreadPoolExecutor(max_workers=workers) as pool:
        results = await asyncio.gather(*[
            loop.run_in_executor(pool, evaluate_point, axis_value, config, spec, options)
            for axis_value, config in points
        ])

    logger.info(
        f"Sweep finished ({len(results)} points)",
        extra={"scenario": spec.name, "duration_ms": int((time.perf_counter() - started) * 1000)},
    )
    return sorted(results, key=lambda r: (r.axis_value is not None, r.axis_value or 0, r.snr_db))
