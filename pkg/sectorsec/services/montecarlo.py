"""
Monte Carlo Service
Empirical SOP from the exact two-hop SNR expressions (the "+1" term kept,
no log-normal fitting), used as the ground truth for every analytic approximation.
"""
import logging
import math
import time
from concurrent.futures import ThreadPoolExecutor
from typing import NamedTuple, Optional, Tuple

import numpy as np

from sectorsec.core.config import settings
from sectorsec.core.exceptions import ValidationError
from sectorsec.models.schemas import (
    Adversary,
    CapacityMode,
    CorrelationMode,
    McEstimate,
    ScenarioConfig,
    TrialOutcome,
)
from sectorsec.services.lognormal import make_stream, sample
from sectorsec.services.network_model import link_snr_dist
from sectorsec.services.secrecy import capacity_destination, capacity_eavesdropper, secrecy_capacity_worst

logger = logging.getLogger(__name__)

WILSON_Z95 = 1.959963984540054


class BlockOutcome(NamedTuple):
    gamma_m: np.ndarray  # first forwarding relay's exact SNR
    gamma_d: np.ndarray
    gamma_q: np.ndarray
    secrecy_capacity: np.ndarray
    outage: np.ndarray


def _af_ratio(first: np.ndarray, second: np.ndarray) -> np.ndarray:
    """Exact end-to-end SNR of one AF relay: g1 g2 / (g1 + g2 + 1)"""
    return first * second / (first + second + 1.0)


def simulate_block(
    config: ScenarioConfig,
    stream: np.random.Generator,
    size: int,
    correlation_mode: CorrelationMode = CorrelationMode.INDEPENDENT,
) -> BlockOutcome:
    """
    Simulate `size` independent channel realizations.

    Draw order is fixed (source links, relay links, adversary links, sector guesses)
    so a block is a pure function of (config, stream state, size, mode).
    """
    rho = config.rho_linear
    channel = config.channel
    g_src = link_snr_dist(channel.mu_s, channel.sigma_s, rho)
    g_relay = link_snr_dist(channel.mu_k, channel.sigma_k, rho)
    m = config.m_right
    shared = CorrelationMode(correlation_mode) is CorrelationMode.SHARED

    gamma_sm = sample(g_src, stream, size=(size, m))
    gamma_md = sample(g_relay, stream, size=(size, m))
    per_relay = _af_ratio(gamma_sm, gamma_md)
    gamma_d = per_relay.sum(axis=1)

    if config.adversary is Adversary.PASSIVE:
        if shared:
            # The eavesdropper is one of the forwarding relays
            gamma_q = gamma_sm[:, 0].copy()
        else:
            gamma_q = sample(g_src, stream, size=size)
    else:
        u1 = config.u1_colluding
        if shared:
            reused = min(u1, m)
            fresh = sample(g_src, stream, size=(size, u1 - reused))
            gamma_su = np.concatenate([gamma_sm[:, :reused], fresh], axis=1)
        else:
            gamma_su = sample(g_src, stream, size=(size, u1))
        gamma_ua = sample(g_relay, stream, size=(size, u1))
        gamma_q = _af_ratio(gamma_su, gamma_ua).sum(axis=1)

    if config.capacity_mode is CapacityMode.HYPOTHESIS:
        right_sector = stream.random(size) < 1.0 / config.n_sectors
        secrecy = np.maximum(
            capacity_destination(gamma_d) - capacity_eavesdropper(gamma_q, right_sector), 0.0
        )
    else:
        secrecy = secrecy_capacity_worst(gamma_d, gamma_q, config.n_sectors)

    return BlockOutcome(
        gamma_m=per_relay[:, 0],
        gamma_d=gamma_d,
        gamma_q=gamma_q,
        secrecy_capacity=secrecy,
        outage=secrecy < config.rate_threshold,
    )


def run_trial(
    config: ScenarioConfig,
    stream: np.random.Generator,
    correlation_mode: CorrelationMode = CorrelationMode.INDEPENDENT,
) -> TrialOutcome:
    block = simulate_block(config, stream, 1, correlation_mode)
    return TrialOutcome(
        gamma_d=float(block.gamma_d[0]),
        gamma_q=float(block.gamma_q[0]),
        secrecy_capacity=float(block.secrecy_capacity[0]),
        outage=bool(block.outage[0]),
    )


def wilson_interval(outages: int, trials: int, z: float = WILSON_Z95) -> Tuple[float, float]:
    """Wilson score interval for a binomial proportion"""
    if trials < 1:
        raise ValidationError("trials must be >= 1", fields=["trials"])
    p = outages / trials
    z2 = z * z
    denom = 1.0 + z2 / trials
    center = (p + z2 / (2.0 * trials)) / denom
    half = z * math.sqrt(p * (1.0 - p) / trials + z2 / (4.0 * trials * trials)) / denom
    low = max(0.0, min(p, center - half))
    high = min(1.0, max(p, center + half))
    return low, high


def _block_sizes(trials: int, block_size: int):
    for index, start in enumerate(range(0, trials, block_size)):
        yield index, min(block_size, trials - start)


def estimate_sop(
    config: ScenarioConfig,
    trials: int,
    seed: int,
    correlation_mode: CorrelationMode = CorrelationMode.INDEPENDENT,
    workers: int = 1,
    block_size: Optional[int] = None,
) -> McEstimate:
    """
    Empirical SOP with a 95% Wilson interval.

    Trials are cut into fixed blocks; block b draws from make_stream(seed, b),
    so the estimate is identical for any number of workers.
    """
    if trials is None or trials < 1:
        raise ValidationError(f"trials must be >= 1, got {trials}", fields=["trials"])
    block_size = block_size or settings.MC_BLOCK_SIZE
    started = time.perf_counter()

    def count(job: Tuple[int, int]) -> int:
        index, size = job
        block = simulate_block(config, make_stream(seed, index), size, correlation_mode)
        return int(np.count_nonzero(block.outage))

    jobs = list(_block_sizes(trials, block_size))
    if workers > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            outages = sum(pool.map(count, jobs))
    else:
        outages = sum(count(job) for job in jobs)

    low, high = wilson_interval(outages, trials)
    logger.debug(
        f"MC estimate {outages}/{trials} outages",
        extra={
            "snr_db": config.snr_db,
            "trials": trials,
            "duration_ms": int((time.perf_counter() - started) * 1000),
        },
    )
    return McEstimate(trials=trials, outages=outages, p_hat=outages / trials, ci_low=low, ci_high=high)


def sample_snrs(
    config: ScenarioConfig,
    trials: int,
    seed: int,
    correlation_mode: CorrelationMode = CorrelationMode.INDEPENDENT,
    block_size: Optional[int] = None,
) -> BlockOutcome:
    """Exact SNR samples (same block streams as estimate_sop), concatenated in block order"""
    if trials < 1:
        raise ValidationError(f"trials must be >= 1, got {trials}", fields=["trials"])
    block_size = block_size or settings.MC_BLOCK_SIZE
    blocks = [
        simulate_block(config, make_stream(seed, index), size, correlation_mode)
        for index, size in _block_sizes(trials, block_size)
    ]
    return BlockOutcome(*(np.concatenate(parts) for parts in zip(*blocks)))


def sample_relay_snrs(config: ScenarioConfig, trials: int, seed: int) -> np.ndarray:
    """Exact per-relay SNR samples gamma_sm gamma_md / (gamma_sm + gamma_md + 1)"""
    return sample_snrs(config, trials, seed).gamma_m
