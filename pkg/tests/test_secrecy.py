"""
Unit Tests - Secrecy capacity and SOP evaluators

Covers:
1. Capacity formulas (base-2 logs, clipping)
2. Three-point closed form, its limits and the printed-weight anomaly
3. Quadrature reference: limits, monotonicity, convergence failure
4. Best-case and hypothesis-averaged variants
"""
import math
from unittest.mock import patch

import numpy as np
import pytest
from scipy.special import ndtr

from sectorsec.core.exceptions import DomainError, QuadratureError
from sectorsec.models.schemas import (
    CapacityMode,
    LogNormalParams,
    PAPER_PRINTED_WEIGHTS,
    STANDARD_WEIGHTS,
    SopInputs,
    SopMethod,
)
from sectorsec.services.network_model import sop_inputs
from sectorsec.services.secrecy import (
    capacity_destination,
    capacity_eavesdropper,
    secrecy_capacity_worst,
    sop,
    sop_best_case,
    sop_closed_form,
    sop_exact_integral,
    sop_gauss_hermite,
    sop_hypothesis_average,
)
from tests.conftest import make_config


def inputs(mu_d=3.0, sigma_d=1.0, mu_q=-2.0, sigma_q=0.5, n=4, r=3.0) -> SopInputs:
    return SopInputs(
        gamma_d=LogNormalParams(mu=mu_d, sigma=sigma_d),
        gamma_q=LogNormalParams(mu=mu_q, sigma=sigma_q),
        n_sectors=n,
        rate_threshold=r,
    )


def best_case_limit(i: SopInputs) -> float:
    return float(ndtr((math.log(2.0 ** (2.0 * i.rate_threshold) - 1.0) - i.gamma_d.mu) / i.gamma_d.sigma))


# ============================================
# Capacities
# ============================================

def test_capacity_destination():
    assert capacity_destination(0.0) == 0.0
    assert capacity_destination(3.0) == pytest.approx(1.0)
    assert capacity_destination(15.0) == pytest.approx(2.0)
    with pytest.raises(DomainError):
        capacity_destination(-1.0)


def test_capacity_eavesdropper():
    assert capacity_eavesdropper(3.0, True) == pytest.approx(1.0)
    assert capacity_eavesdropper(1e6, False) == 0.0
    assert capacity_eavesdropper(0.0, True) == 0.0


def test_capacities_work_elementwise():
    gamma = np.array([0.0, 3.0, 15.0])
    np.testing.assert_allclose(capacity_destination(gamma), [0.0, 1.0, 2.0])
    np.testing.assert_allclose(
        capacity_eavesdropper(gamma, np.array([True, False, True])), [0.0, 0.0, 2.0]
    )
    with pytest.raises(DomainError):
        capacity_eavesdropper(np.array([3.0, -1.0]), np.array([True, True]))
    with pytest.raises(DomainError):
        capacity_destination(np.array([1.0, np.nan]))


def test_secrecy_capacity_worst():
    assert secrecy_capacity_worst(5.0, 5.0, 1) == 0.0
    assert secrecy_capacity_worst(3.0, 15.0, 4) == pytest.approx(0.5)
    assert secrecy_capacity_worst(0.0, 42.0, 2) == 0.0


def test_secrecy_capacity_worst_on_arrays():
    c = secrecy_capacity_worst(np.array([3.0, 0.0, 15.0]), np.array([15.0, 1.0, 0.0]), 4)
    np.testing.assert_allclose(c, [0.5, 0.0, 2.0])


# ============================================
# Closed form
# ============================================

def test_closed_form_zero_threshold_large_n():
    assert sop_closed_form(inputs(r=0.0, n=1_000_000)) < 1e-10


def test_closed_form_large_n_limit():
    i = inputs(n=1_000_000)
    limit = best_case_limit(i)
    assert sop_closed_form(i, STANDARD_WEIGHTS) == pytest.approx(limit, abs=1e-6)
    # The printed weights sum to 2/3, so the limit comes out at 2/3 of the true value
    assert sop_closed_form(i, PAPER_PRINTED_WEIGHTS) == pytest.approx(2.0 / 3.0 * limit, abs=1e-6)


def test_closed_form_single_evaluation_for_point_mass():
    i = inputs(mu_q=1.0, sigma_q=1e-9, n=2)
    level = 2.0 ** 6 * (1.0 + math.e) ** 0.5 - 1.0
    expected = float(ndtr((math.log(level) - 3.0) / 1.0))
    assert sop_closed_form(i) == pytest.approx(expected, abs=1e-9)
    assert sop_exact_integral(i) == pytest.approx(expected, abs=1e-7)


def test_closed_form_tracks_quadrature_at_reference_passive_params():
    for n in (4, 8):
        for snr_db in range(5, 31, 5):
            i = sop_inputs(make_config(n_sectors=n, snr_db=float(snr_db)))
            exact = sop_exact_integral(i)
            if exact < 1e-3:
                continue
            closed = sop_closed_form(i, STANDARD_WEIGHTS)
            assert abs(math.log10(closed) - math.log10(exact)) <= 0.1


def test_gauss_hermite_agrees_with_quadrature():
    i = sop_inputs(make_config(n_sectors=2, snr_db=18.0))
    assert sop_gauss_hermite(i, order=40) == pytest.approx(sop_exact_integral(i), rel=1e-4)


def test_all_evaluators_stay_in_unit_interval():
    rng = np.random.default_rng(17)
    for _ in range(60):
        i = inputs(
            mu_d=float(rng.uniform(-2, 10)),
            sigma_d=float(rng.uniform(0.2, 2.5)),
            mu_q=float(rng.uniform(-3, 10)),
            sigma_q=float(rng.uniform(0.2, 2.5)),
            n=int(rng.integers(1, 12)),
            r=float(rng.uniform(0.0, 4.0)),
        )
        for value in (
            sop_closed_form(i, STANDARD_WEIGHTS),
            sop_closed_form(i, PAPER_PRINTED_WEIGHTS),
            sop_best_case(i.gamma_d, i.rate_threshold),
            sop_hypothesis_average(i),
        ):
            assert 0.0 <= value <= 1.0


# ============================================
# Quadrature reference
# ============================================

def test_exact_integral_large_n_limit():
    i = inputs(n=1_000_000)
    assert sop_exact_integral(i) == pytest.approx(best_case_limit(i), abs=1e-6)


def test_exact_integral_monotonicity():
    rng = np.random.default_rng(2024)
    slack = 1e-8
    for _ in range(100):
        mu_d = float(rng.uniform(0.0, 8.0))
        sigma_d = float(rng.uniform(0.5, 2.0))
        mu_q = float(rng.uniform(-2.0, 8.0))
        sigma_q = float(rng.uniform(0.3, 2.0))
        n = int(rng.integers(1, 16))
        r = float(rng.uniform(0.5, 4.0))
        base = sop_exact_integral(inputs(mu_d, sigma_d, mu_q, sigma_q, n, r))

        assert sop_exact_integral(inputs(mu_d, sigma_d, mu_q, sigma_q, n + 1, r)) <= base + slack
        assert sop_exact_integral(inputs(mu_d + 0.5, sigma_d, mu_q, sigma_q, n, r)) <= base + slack
        assert sop_exact_integral(inputs(mu_d, sigma_d, mu_q, sigma_q, n, r + 0.25)) >= base - slack
        assert sop_exact_integral(inputs(mu_d, sigma_d, mu_q + 0.5, sigma_q, n, r)) >= base - slack


def test_exact_integral_reports_non_convergence():
    with patch("sectorsec.services.secrecy.integrate.quad", return_value=(0.4, 1e-3, {}, "maximum number of subdivisions")):
        with pytest.raises(QuadratureError) as exc:
            sop_exact_integral(inputs())
    assert exc.value.exit_code == 3
    assert exc.value.details["abserr"] == 1e-3
    assert "subdivisions" in exc.value.message


# ============================================
# Best case and hypothesis averaging
# ============================================

def test_best_case():
    i = inputs()
    assert sop_best_case(i.gamma_d, 3.0) == pytest.approx(best_case_limit(i), abs=1e-15)
    assert sop_best_case(i.gamma_d, 0.0) == 0.0
    with pytest.raises(DomainError):
        sop_best_case(i.gamma_d, -1.0)


def test_best_case_never_above_worst_case():
    for snr_db in (5.0, 15.0, 25.0):
        i = sop_inputs(make_config(snr_db=snr_db))
        assert sop_best_case(i.gamma_d, i.rate_threshold) <= sop_exact_integral(i) + 1e-8


def test_hypothesis_average_formula():
    i = inputs(mu_q=4.0, sigma_q=1.5, n=4)
    best = sop_best_case(i.gamma_d, i.rate_threshold)
    informed = sop_closed_form(i, STANDARD_WEIGHTS, exponent=1.0)
    assert sop_hypothesis_average(i) == pytest.approx(informed / 4 + 0.75 * best, rel=1e-12)
    assert sop_hypothesis_average(i) >= best


def test_hypothesis_single_sector_is_full_capacity_eavesdropper():
    i = inputs(mu_q=4.0, sigma_q=1.5, n=1)
    assert sop_hypothesis_average(i, SopMethod.EXACT) == pytest.approx(sop_exact_integral(i), rel=1e-9)


def test_sop_dispatch():
    i = inputs(mu_q=4.0, sigma_q=1.5, n=4)
    assert sop(i) == sop_closed_form(i, STANDARD_WEIGHTS)
    assert sop(i, SopMethod.EXACT) == sop_exact_integral(i)
    assert sop(i, SopMethod.GAUSS_HERMITE) == sop_gauss_hermite(i)
    assert sop(i, SopMethod.HOLTZMAN, PAPER_PRINTED_WEIGHTS) == sop_closed_form(i, PAPER_PRINTED_WEIGHTS)
    assert sop(i, capacity_mode=CapacityMode.HYPOTHESIS) == sop_hypothesis_average(i)
