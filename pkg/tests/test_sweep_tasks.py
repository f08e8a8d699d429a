"""
Unit Tests - Sweep tasks

Async sweep runner: concurrency must not change results or their order.
"""
import pytest

from sectorsec.models.schemas import CapacityMode, PAPER_PRINTED_WEIGHTS, STANDARD_WEIGHTS
from sectorsec.services.network_model import sop_inputs
from sectorsec.services.scenario_file import build_sweep_spec
from sectorsec.services.secrecy import sop_closed_form
from sectorsec.tasks.sweep import SweepOptions, evaluate_point, run_sweep

RAW = {
    "adversary": "passive",
    "m_right": 4,
    "rate_threshold": 3.0,
    "mu_s": 1.0, "sigma_s": 0.95, "mu_k": 1.0, "sigma_k": 0.95,
    "vary": "N",
    "vary_values": [8, 2],
    "snr_grid": [10.0, 20.0, 25.0],
    "mc_trials": 5000,
    "seed": 1,
}


def spec(**changes):
    raw = dict(RAW)
    raw.update(changes)
    return build_sweep_spec(raw, name="sweep-test")


@pytest.mark.asyncio
async def test_run_sweep_sorted_by_axis_then_snr():
    results = await run_sweep(spec(), SweepOptions(), workers=3)
    keys = [(r.axis_value, r.snr_db) for r in results]
    assert keys == [(2, 10.0), (2, 20.0), (2, 25.0), (8, 10.0), (8, 20.0), (8, 25.0)]
    assert all(r.sop_analytic is not None and r.sop_exact is not None for r in results)
    assert all(r.mc is None and r.sop_best_case is None for r in results)


@pytest.mark.asyncio
async def test_run_sweep_independent_of_workers():
    options = SweepOptions(simulate=True)
    one = await run_sweep(spec(), options, workers=1)
    many = await run_sweep(spec(), options, workers=6)
    assert one == many


@pytest.mark.asyncio
async def test_run_sweep_single_curve():
    results = await run_sweep(spec(vary=None, vary_values=[], n_sectors=4), SweepOptions(exact=False), workers=2)
    assert [r.axis_value for r in results] == [None, None, None]
    assert all(r.sop_exact is None for r in results)


def test_evaluate_point_all_columns():
    s = spec(weights="paper-printed")
    axis_value, config = next(s.points())
    result = evaluate_point(
        axis_value, config, s,
        SweepOptions(analytic=True, exact=True, presets=True, best_case=True, simulate=True),
    )
    inputs = sop_inputs(config)
    assert result.sop_analytic == sop_closed_form(inputs, PAPER_PRINTED_WEIGHTS)
    assert result.sop_standard == sop_closed_form(inputs, STANDARD_WEIGHTS)
    assert result.sop_paper_printed == result.sop_analytic
    assert result.sop_best_case <= result.sop_standard
    assert result.mc.trials == 5000


def test_evaluate_point_hypothesis_mode():
    s = spec(capacity_mode="hypothesis")
    axis_value, config = next(s.points())
    assert config.capacity_mode is CapacityMode.HYPOTHESIS
    result = evaluate_point(axis_value, config, s, SweepOptions(best_case=True))
    assert result.sop_analytic >= result.sop_best_case
