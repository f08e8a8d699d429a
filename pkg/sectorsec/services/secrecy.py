"""
Secrecy Service
Capacity formulas and the secrecy outage probability (SOP): the three-point
closed form, an adaptive-quadrature reference for the same integral, and the
best-case / hypothesis-averaged variants.
"""
import logging
import math
from typing import Optional, Union

import numpy as np
from scipy import integrate
from scipy.special import ndtr

from sectorsec.core.config import settings
from sectorsec.core.exceptions import DomainError, QuadratureError
from sectorsec.models.schemas import (
    CapacityMode,
    HoltzmanWeights,
    LogNormalParams,
    SopInputs,
    SopMethod,
    STANDARD_WEIGHTS,
)
from sectorsec.services.lognormal import gauss_hermite_expectation, holtzman_expectation

logger = logging.getLogger(__name__)

LN2 = math.log(2.0)
# Integration window for beta, in units of sigma_q around mu_q
BETA_HALF_WIDTH = 10.0

ArrayLike = Union[float, np.ndarray]


# ============================================
# Capacities (bits/s/Hz, base-2 logs)
# ============================================

def _non_negative_snr(operation: str, gamma_value: ArrayLike) -> np.ndarray:
    gamma = np.asarray(gamma_value, dtype=float)
    if np.any(np.isnan(gamma)) or np.any(gamma < 0):
        raise DomainError(operation, "SNR must be non-negative", gamma=gamma_value)
    return gamma


def _scalar_or_array(value: np.ndarray) -> ArrayLike:
    return float(value) if np.ndim(value) == 0 else value


def capacity_destination(gamma_d_value: ArrayLike) -> ArrayLike:
    """C_d = [1/2 log2(1 + gamma_d)]^+ ; works elementwise on arrays"""
    gamma = _non_negative_snr("capacity_destination", gamma_d_value)
    return _scalar_or_array(0.5 * np.log2(1.0 + gamma))


def capacity_eavesdropper(gamma_value: ArrayLike, in_right_sector: Union[bool, np.ndarray]) -> ArrayLike:
    """1/2 log2(1 + gamma) when the eavesdropper holds the right sector (H1), 0 otherwise (H2)"""
    gamma = _non_negative_snr("capacity_eavesdropper", gamma_value)
    return _scalar_or_array(np.where(in_right_sector, 0.5 * np.log2(1.0 + gamma), 0.0))


def secrecy_capacity_worst(gamma_d_value: ArrayLike, gamma_q_value: ArrayLike, n_sectors: int) -> ArrayLike:
    """[1/2 log2(1 + gamma_d) - 1/(2N) log2(1 + gamma_q)]^+ ; works elementwise on arrays"""
    c = 0.5 * np.log2(1.0 + np.asarray(gamma_d_value, dtype=float)) - (
        0.5 / n_sectors
    ) * np.log2(1.0 + np.asarray(gamma_q_value, dtype=float))
    return _scalar_or_array(np.maximum(c, 0.0))


# ============================================
# SOP integrand
# ============================================

def _log_expm1(x: float) -> float:
    """ln(e^x - 1) for x > 0 without overflow"""
    if x > 30.0:
        return x + math.log1p(-math.exp(-x))
    return math.log(math.expm1(x))


def _psi(gamma_d: LogNormalParams, rate_threshold: float, exponent: float):
    """
    psi(beta) = F_{gamma_d}(2^{2R} (1 + e^beta)^exponent - 1).

    The threshold is handled in the log domain; a non-positive threshold
    means gamma_d cannot fall below it, so psi is 0 there.
    """
    log_base = 2.0 * rate_threshold * LN2

    def psi(beta: float) -> float:
        log_level = log_base + exponent * float(np.logaddexp(0.0, beta))
        if log_level <= 0.0:
            return 0.0
        return float(ndtr((_log_expm1(log_level) - gamma_d.mu) / gamma_d.sigma))

    return psi


def _clamp(p: float) -> float:
    return min(1.0, max(0.0, p))


# ============================================
# SOP evaluators
# ============================================

def sop_closed_form(inputs: SopInputs, weights: HoltzmanWeights = STANDARD_WEIGHTS, exponent: Optional[float] = None) -> float:
    """Three-point (Holtzman) evaluation of E[psi(beta)], beta = ln gamma_q; clamped to [0, 1]"""
    exponent = 1.0 / inputs.n_sectors if exponent is None else exponent
    psi = _psi(inputs.gamma_d, inputs.rate_threshold, exponent)
    return _clamp(holtzman_expectation(psi, inputs.gamma_q.mu, inputs.gamma_q.sigma, weights))


def sop_gauss_hermite(inputs: SopInputs, order: int = 20, exponent: Optional[float] = None) -> float:
    exponent = 1.0 / inputs.n_sectors if exponent is None else exponent
    psi = _psi(inputs.gamma_d, inputs.rate_threshold, exponent)
    return _clamp(gauss_hermite_expectation(psi, inputs.gamma_q.mu, inputs.gamma_q.sigma, order))


def sop_exact_integral(
    inputs: SopInputs,
    abs_tol: Optional[float] = None,
    exponent: Optional[float] = None,
) -> float:
    """
    Reference SOP: integral of psi(beta) against the N(mu_q, sigma_q^2) density,
    integrated in standardized units t = (beta - mu_q) / sigma_q over |t| <= 10.
    """
    abs_tol = abs_tol or settings.SOP_INTEGRAL_ABS_TOL
    exponent = 1.0 / inputs.n_sectors if exponent is None else exponent
    psi = _psi(inputs.gamma_d, inputs.rate_threshold, exponent)
    mu_q, sigma_q = inputs.gamma_q.mu, inputs.gamma_q.sigma
    norm_const = 1.0 / math.sqrt(2.0 * math.pi)

    def integrand(t: float) -> float:
        return psi(mu_q + sigma_q * t) * norm_const * math.exp(-0.5 * t * t)

    limit = 200
    value, abserr, info, *rest = integrate.quad(
        integrand,
        -BETA_HALF_WIDTH,
        BETA_HALF_WIDTH,
        epsabs=abs_tol * 0.1,
        epsrel=1e-10,
        limit=limit,
        full_output=1,
    )
    if not math.isfinite(value) or abserr > abs_tol:
        raise QuadratureError(
            f"SOP integral did not converge: {rest[0] if rest else 'abserr above tolerance'}",
            estimate=value,
            abserr=abserr,
            limit=limit,
        )
    return _clamp(value)


def sop_best_case(gamma_d: LogNormalParams, rate_threshold: float) -> float:
    """Pr[C_d < R]: the eavesdropper cannot recover the sector key (N -> infinity limit)"""
    if rate_threshold < 0:
        raise DomainError("sop_best_case", "rate threshold must be non-negative", rate_threshold=rate_threshold)
    if rate_threshold == 0:
        return 0.0
    return float(ndtr((_log_expm1(2.0 * rate_threshold * LN2) - gamma_d.mu) / gamma_d.sigma))


def sop_hypothesis_average(
    inputs: SopInputs,
    method: SopMethod = SopMethod.HOLTZMAN,
    weights: HoltzmanWeights = STANDARD_WEIGHTS,
) -> float:
    """
    Average over the right-sector guess: with probability 1/N the eavesdropper
    decodes at full capacity, otherwise it contributes nothing.
    """
    n = inputs.n_sectors
    best = sop_best_case(inputs.gamma_d, inputs.rate_threshold)
    informed = _evaluate(inputs, method, weights, exponent=1.0)
    return _clamp(informed / n + (1.0 - 1.0 / n) * best)


def _evaluate(inputs: SopInputs, method: SopMethod, weights: HoltzmanWeights, exponent: Optional[float] = None) -> float:
    method = SopMethod(method)
    if method is SopMethod.EXACT:
        return sop_exact_integral(inputs, exponent=exponent)
    if method is SopMethod.GAUSS_HERMITE:
        return sop_gauss_hermite(inputs, exponent=exponent)
    return sop_closed_form(inputs, weights, exponent=exponent)


def sop(
    inputs: SopInputs,
    method: SopMethod = SopMethod.HOLTZMAN,
    weights: HoltzmanWeights = STANDARD_WEIGHTS,
    capacity_mode: CapacityMode = CapacityMode.WORST_CASE,
) -> float:
    """Dispatch on evaluation method and capacity model"""
    if CapacityMode(capacity_mode) is CapacityMode.HYPOTHESIS:
        return sop_hypothesis_average(inputs, method, weights)
    return _evaluate(inputs, method, weights)
