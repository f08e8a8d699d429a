"""
Log-normal Distribution Algebra
Density/CDF evaluation, closure under scaling and powers, moment-matched sums,
three-point Gaussian expectations and seeded sampling.
"""
import logging
import math
from typing import Callable, Optional, Sequence, Union

import numpy as np
from scipy import stats
from scipy.special import logsumexp, ndtr, ndtri

from sectorsec.core.exceptions import DomainError, NumericError
from sectorsec.models.schemas import HoltzmanWeights, LogNormalParams, STANDARD_WEIGHTS

logger = logging.getLogger(__name__)

SQRT3 = math.sqrt(3.0)
SQRT_2PI = math.sqrt(2.0 * math.pi)


# ============================================
# Standard normal
# ============================================

def std_normal_cdf(x: float) -> float:
    """Phi(x), accurate to ~1e-16 absolute (scipy's ndtr)"""
    if not math.isfinite(x):
        raise DomainError("std_normal_cdf", "input must be finite", x=x)
    return float(ndtr(x))


# ============================================
# Density and distribution function
# ============================================

def lognormal_pdf(p: LogNormalParams, x: float) -> float:
    if not (x > 0) or not math.isfinite(x):
        raise DomainError("lognormal_pdf", "x must be positive and finite", x=x)
    z = (math.log(x) - p.mu) / p.sigma
    return math.exp(-0.5 * z * z) / (x * p.sigma * SQRT_2PI)


def lognormal_cdf(p: LogNormalParams, x: float) -> float:
    if math.isnan(x) or x < 0:
        raise DomainError("lognormal_cdf", "x must be non-negative", x=x)
    if x == 0:
        return 0.0
    if math.isinf(x):
        return 1.0
    return float(ndtr((math.log(x) - p.mu) / p.sigma))


def lognormal_cdf_array(p: LogNormalParams, x: np.ndarray) -> np.ndarray:
    """Vectorized CDF; non-positive entries map to 0"""
    x = np.asarray(x, dtype=float)
    out = np.zeros_like(x)
    positive = x > 0
    out[positive] = ndtr((np.log(x[positive]) - p.mu) / p.sigma)
    return out


def lognormal_quantile(p: LogNormalParams, q: float) -> float:
    if not (0.0 < q < 1.0):
        raise DomainError("lognormal_quantile", "q must lie in (0, 1)", q=q)
    return math.exp(p.mu + p.sigma * float(ndtri(q)))


def lognormal_mean(p: LogNormalParams) -> float:
    return math.exp(p.mu + 0.5 * p.variance)


def lognormal_variance(p: LogNormalParams) -> float:
    return math.expm1(p.variance) * math.exp(2.0 * p.mu + p.variance)


# ============================================
# Closure laws
# ============================================

def scale(p: LogNormalParams, a: float) -> LogNormalParams:
    """aX ~ lnN(mu + ln a, sigma^2)"""
    if not (a > 0) or not math.isfinite(a):
        raise DomainError("scale", "factor must be positive and finite", a=a)
    return LogNormalParams(mu=p.mu + math.log(a), sigma=p.sigma)


def power(p: LogNormalParams, a: float) -> LogNormalParams:
    """X^a ~ lnN(a mu, a^2 sigma^2)"""
    if a == 0 or not math.isfinite(a):
        raise DomainError("power", "exponent must be finite and non-zero", a=a)
    return LogNormalParams(mu=a * p.mu, sigma=abs(a) * p.sigma)


def fenton_sum(components: Sequence[LogNormalParams]) -> LogNormalParams:
    """
    Fit a single log-normal to a sum of independent log-normals by matching
    the first two moments.

    Evaluated in the log domain so large locations do not overflow:
        sigma_z^2 = ln(1 + sum var_j / (sum mean_j)^2)
        mu_z      = ln(sum mean_j) - sigma_z^2 / 2
    """
    if not components:
        raise DomainError("fenton_sum", "at least one component is required")

    mu = np.array([c.mu for c in components], dtype=float)
    var = np.array([c.variance for c in components], dtype=float)

    log_first = logsumexp(mu + 0.5 * var)
    log_second = logsumexp(2.0 * mu + var + np.log(np.expm1(var)))
    sigma_z2 = math.log1p(math.exp(log_second - 2.0 * log_first))
    mu_z = log_first - 0.5 * sigma_z2

    if not (math.isfinite(mu_z) and sigma_z2 > 0):
        raise NumericError(
            "fenton_sum produced a degenerate fit",
            {"mu_z": mu_z, "sigma_z2": sigma_z2, "components": len(components)},
        )
    return LogNormalParams(mu=mu_z, sigma=math.sqrt(sigma_z2))


# ============================================
# Gaussian expectations
# ============================================

def holtzman_expectation(
    psi: Callable[[float], float],
    mu: float,
    sigma: float,
    w: HoltzmanWeights = STANDARD_WEIGHTS,
) -> float:
    """E[psi(beta)], beta ~ N(mu, sigma^2), from the three points mu and mu +/- sqrt(3) sigma"""
    if not (sigma > 0):
        raise DomainError("holtzman_expectation", "sigma must be positive", sigma=sigma)

    offset = SQRT3 * sigma
    values = (psi(mu), psi(mu + offset), psi(mu - offset))
    if not all(math.isfinite(v) for v in values):
        raise NumericError(
            "psi is not finite at a Holtzman evaluation point",
            {"mu": mu, "sigma": sigma, "values": values},
        )
    return w.w_center * values[0] + w.w_plus * values[1] + w.w_minus * values[2]


def gauss_hermite_expectation(
    psi: Callable[[float], float],
    mu: float,
    sigma: float,
    order: int = 20,
) -> float:
    """E[psi(beta)] with an order-point Gauss-Hermite rule; order 3 reproduces the standard Holtzman weights"""
    if order < 1:
        raise DomainError("gauss_hermite_expectation", "order must be >= 1", order=order)
    if not (sigma > 0):
        raise DomainError("gauss_hermite_expectation", "sigma must be positive", sigma=sigma)

    nodes, weights = np.polynomial.hermite.hermgauss(order)
    points = mu + math.sqrt(2.0) * sigma * nodes
    values = np.array([psi(float(b)) for b in points])
    if not np.all(np.isfinite(values)):
        raise NumericError("psi is not finite at a Gauss-Hermite node", {"mu": mu, "sigma": sigma})
    return float(np.dot(weights, values) / math.sqrt(math.pi))


# ============================================
# Sampling
# ============================================

def make_stream(seed: int, index: int = 0) -> np.random.Generator:
    """
    Counter-addressable random stream for (seed, index).

    Streams for different indices are statistically independent and do not
    depend on the order in which they are created.
    """
    return np.random.Generator(np.random.Philox(np.random.SeedSequence(seed, spawn_key=(index,))))


def sample(
    p: LogNormalParams,
    stream: np.random.Generator,
    size: Optional[Union[int, tuple]] = None,
) -> Union[float, np.ndarray]:
    """exp(mu + sigma g), g standard normal drawn from stream"""
    g = stream.standard_normal(size)
    if size is None:
        return math.exp(p.mu + p.sigma * float(g))
    return np.exp(p.mu + p.sigma * g)


def ks_distance(samples: np.ndarray, p: LogNormalParams) -> float:
    """Kolmogorov-Smirnov statistic between samples and the fitted law"""
    samples = np.asarray(samples, dtype=float)
    if samples.size == 0:
        raise DomainError("ks_distance", "no samples")
    return float(stats.kstest(samples, lambda x: lognormal_cdf_array(p, x)).statistic)
