"""
Network Model Service
Maps a scenario to the fitted log-normal laws of every SNR in the two-hop
amplify-and-forward network: links, per-relay, destination and adversary.
"""
import logging
import math
from typing import Optional

from sectorsec.core.exceptions import DomainError, ValidationError
from sectorsec.models.schemas import (
    Adversary,
    DerivedDistributions,
    LogNormalParams,
    ScenarioConfig,
    SopInputs,
)
from sectorsec.services.lognormal import fenton_sum, power, scale

logger = logging.getLogger(__name__)


def snr_db_to_linear(snr_db: float) -> float:
    return 10.0 ** (snr_db / 10.0)


def link_snr_dist(mu_v: float, sigma_v: float, rho_linear: float) -> LogNormalParams:
    """gamma = rho |h|^2 with h ~ lnN(mu_v, sigma_v^2): (2 mu_v + ln rho, 2 sigma_v)"""
    if not (rho_linear > 0) or not math.isfinite(rho_linear):
        raise DomainError("link_snr_dist", "rho must be positive and finite", rho=rho_linear)
    gain = power(LogNormalParams(mu=mu_v, sigma=sigma_v), 2.0)
    return scale(gain, rho_linear)


def relay_snr_dist(g_sm: LogNormalParams, g_md: LogNormalParams) -> LogNormalParams:
    """
    High-SNR per-relay law: gamma_m ~ 1 / (1/gamma_sm + 1/gamma_md) = 1/z,
    with z fitted as a two-term log-normal sum.
    """
    z = fenton_sum([power(g_sm, -1.0), power(g_md, -1.0)])
    return power(z, -1.0)


def _identical_sum(g: LogNormalParams, count: int) -> LogNormalParams:
    """Closed form of fenton_sum for `count` identical components"""
    sigma2 = math.log(math.expm1(g.variance) / count + 1.0)
    mu = math.log(count) + g.mu + 0.5 * (g.variance - sigma2)
    return LogNormalParams(mu=mu, sigma=math.sqrt(sigma2))


def destination_snr_dist(g_m: LogNormalParams, m_right: int) -> LogNormalParams:
    """gamma_d = sum of M per-relay SNRs"""
    if m_right < 1:
        raise DomainError("destination_snr_dist", "m_right must be >= 1", m_right=m_right)
    return _identical_sum(g_m, m_right)


def wiretapper_snr_dist(g_m: LogNormalParams, u1: int) -> LogNormalParams:
    """gamma_A = sum of U1 leak SNRs, each distributed like gamma_m"""
    if u1 < 1:
        raise DomainError("wiretapper_snr_dist", "u1 must be >= 1", u1=u1)
    return _identical_sum(g_m, u1)


def derive_all(config: ScenarioConfig) -> DerivedDistributions:
    """Run the whole fitting pipeline for one scenario"""
    if config.adversary is Adversary.COLLUDING and config.u1_colluding < 1:
        raise ValidationError("colluding adversary requires u1_colluding >= 1", fields=["u1_colluding"])

    rho = config.rho_linear
    channel = config.channel
    g_src = link_snr_dist(channel.mu_s, channel.sigma_s, rho)
    g_relay = link_snr_dist(channel.mu_k, channel.sigma_k, rho)
    g_m = relay_snr_dist(g_src, g_relay)
    g_d = destination_snr_dist(g_m, config.m_right)

    if config.adversary is Adversary.PASSIVE:
        # gamma_e = rho_s |h_{s,e}|^2 over a generic source link
        g_q = g_src
    else:
        g_q = wiretapper_snr_dist(g_m, config.u1_colluding)

    logger.debug(
        f"Derived distributions mu_d={g_d.mu:.6f} sigma_d={g_d.sigma:.6f} mu_q={g_q.mu:.6f} sigma_q={g_q.sigma:.6f}",
        extra={"snr_db": config.snr_db},
    )
    return DerivedDistributions(
        gamma_link_src=g_src,
        gamma_link_relay=g_relay,
        gamma_m=g_m,
        gamma_d=g_d,
        gamma_q=g_q,
    )


def sop_inputs(config: ScenarioConfig, derived: Optional[DerivedDistributions] = None) -> SopInputs:
    derived = derived or derive_all(config)
    return SopInputs(
        gamma_d=derived.gamma_d,
        gamma_q=derived.gamma_q,
        n_sectors=config.n_sectors,
        rate_threshold=config.rate_threshold,
    )
