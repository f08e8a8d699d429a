"""
Pydantic Models for Scenarios, Distributions and Sweep Results
"""
from pydantic import BaseModel, ConfigDict, Field, ValidationInfo, field_validator, model_validator
from typing import Optional, List, Iterator, Tuple
from pathlib import Path
from enum import Enum
import math

from sectorsec.core.config import get_settings


# ============================================
# Enums
# ============================================

class Adversary(str, Enum):
    PASSIVE = "passive"
    COLLUDING = "colluding"


class CapacityMode(str, Enum):
    WORST_CASE = "worst-case"
    HYPOTHESIS = "hypothesis"


class CorrelationMode(str, Enum):
    INDEPENDENT = "independent"
    SHARED = "shared"


class WeightsChoice(str, Enum):
    STANDARD = "standard"
    PAPER_PRINTED = "paper-printed"


class SweepAxis(str, Enum):
    N = "N"
    U1 = "U1"


class SopMethod(str, Enum):
    HOLTZMAN = "holtzman"
    EXACT = "exact"
    GAUSS_HERMITE = "gauss-hermite"


# ============================================
# Distribution Models
# ============================================

class LogNormalParams(BaseModel):
    """ln X ~ N(mu, sigma^2), natural-log units; sigma is canonical, not sigma^2"""
    model_config = ConfigDict(frozen=True)

    mu: float = Field(..., allow_inf_nan=False)
    sigma: float = Field(..., gt=0, allow_inf_nan=False)

    @property
    def variance(self) -> float:
        return self.sigma * self.sigma


class HoltzmanWeights(BaseModel):
    """Weights applied at mu, mu + sqrt(3) sigma and mu - sqrt(3) sigma"""
    model_config = ConfigDict(frozen=True)

    w_center: float
    w_plus: float
    w_minus: float

    @property
    def total(self) -> float:
        return self.w_center + self.w_plus + self.w_minus

    @classmethod
    def preset(cls, choice: WeightsChoice) -> "HoltzmanWeights":
        if WeightsChoice(choice) is WeightsChoice.PAPER_PRINTED:
            return PAPER_PRINTED_WEIGHTS
        return STANDARD_WEIGHTS


STANDARD_WEIGHTS = HoltzmanWeights(w_center=2.0 / 3.0, w_plus=1.0 / 6.0, w_minus=1.0 / 6.0)
# As printed in the closed form: the third weight carries a minus sign and the weights sum to 2/3
PAPER_PRINTED_WEIGHTS = HoltzmanWeights(w_center=2.0 / 3.0, w_plus=1.0 / 6.0, w_minus=-1.0 / 6.0)


# ============================================
# Scenario Models
# ============================================

class ChannelStats(BaseModel):
    """Log-normal channel coefficients: h_s ~ lnN(mu_s, sigma_s^2), h_k ~ lnN(mu_k, sigma_k^2)"""
    model_config = ConfigDict(frozen=True)

    mu_s: float = Field(..., allow_inf_nan=False, description="Source-link log-location")
    sigma_s: float = Field(..., gt=0, allow_inf_nan=False)
    mu_k: float = Field(..., allow_inf_nan=False, description="Relay-link log-location")
    sigma_k: float = Field(..., gt=0, allow_inf_nan=False)


class ScenarioConfig(BaseModel):
    """One evaluation point. Noise power is normalized to 1, so snr_db is the only power knob."""
    model_config = ConfigDict(frozen=True)

    channel: ChannelStats
    n_sectors: int = Field(..., ge=1)
    m_right: int = Field(..., ge=1)
    adversary: Adversary = Adversary.PASSIVE
    u1_colluding: int = Field(default=0, ge=0, validate_default=True)
    rate_threshold: float = Field(..., ge=0, allow_inf_nan=False)
    snr_db: float = Field(default=0.0, allow_inf_nan=False)
    capacity_mode: CapacityMode = CapacityMode.WORST_CASE

    @field_validator("u1_colluding")
    @classmethod
    def validate_colluding_count(cls, v: int, info: ValidationInfo) -> int:
        if info.data.get("adversary") == Adversary.COLLUDING and v < 1:
            raise ValueError("colluding adversary needs at least one colluding relay (u1_colluding >= 1)")
        return v

    @property
    def rho_linear(self) -> float:
        return 10.0 ** (self.snr_db / 10.0)

    def evolve(self, **changes) -> "ScenarioConfig":
        """Copy with changes, re-running validation"""
        data = self.model_dump()
        data.update(changes)
        return ScenarioConfig.model_validate(data)


class DerivedDistributions(BaseModel):
    """Fitted log-normal laws of every SNR in the two-hop pipeline"""
    model_config = ConfigDict(frozen=True)

    gamma_link_src: LogNormalParams
    gamma_link_relay: LogNormalParams
    gamma_m: LogNormalParams
    gamma_d: LogNormalParams
    gamma_q: LogNormalParams


class SopInputs(BaseModel):
    model_config = ConfigDict(frozen=True)

    gamma_d: LogNormalParams
    gamma_q: LogNormalParams
    n_sectors: int = Field(..., ge=1)
    rate_threshold: float = Field(..., ge=0, allow_inf_nan=False)


# ============================================
# Monte Carlo Models
# ============================================

class TrialOutcome(BaseModel):
    gamma_d: float = Field(..., ge=0)
    gamma_q: float = Field(..., ge=0)
    secrecy_capacity: float = Field(..., ge=0)
    outage: bool


class McEstimate(BaseModel):
    model_config = ConfigDict(frozen=True)

    trials: int = Field(..., ge=1)
    outages: int = Field(..., ge=0)
    p_hat: float = Field(..., ge=0, le=1)
    ci_low: float = Field(..., ge=0, le=1)
    ci_high: float = Field(..., ge=0, le=1)

    @model_validator(mode="after")
    def check_counts(self) -> "McEstimate":
        if self.outages > self.trials:
            raise ValueError("outages cannot exceed trials")
        if not (self.ci_low <= self.p_hat <= self.ci_high):
            raise ValueError("confidence interval must contain p_hat")
        return self


# ============================================
# Sweep Models
# ============================================

class SweepSpec(BaseModel):
    """A scenario plus the grid to evaluate it on"""
    name: str = "scenario"
    base: ScenarioConfig
    snr_grid: List[float]
    vary: Optional[SweepAxis] = None
    vary_values: List[int] = Field(default_factory=list)
    mc_trials: int = Field(default_factory=lambda: get_settings().DEFAULT_MC_TRIALS, ge=1)
    seed: int = Field(default=0, ge=0)
    weights_choice: WeightsChoice = WeightsChoice.STANDARD
    correlation: CorrelationMode = CorrelationMode.INDEPENDENT
    output_path: Optional[Path] = None

    @field_validator("snr_grid")
    @classmethod
    def validate_grid(cls, v: List[float]) -> List[float]:
        if not v:
            raise ValueError("snr_grid must not be empty")
        if any(not math.isfinite(x) for x in v):
            raise ValueError("snr_grid values must be finite")
        if any(b <= a for a, b in zip(v, v[1:])):
            raise ValueError("snr_grid must be strictly increasing")
        return v

    @model_validator(mode="after")
    def validate_axis(self) -> "SweepSpec":
        if self.vary is not None and not self.vary_values:
            raise ValueError("vary_values must list at least one value when vary is set")
        if self.vary is None and self.vary_values:
            raise ValueError("vary_values given without vary")
        # Every point must be a valid scenario on its own
        for _ in self.configs():
            pass
        return self

    def configs(self) -> Iterator[Tuple[Optional[int], ScenarioConfig]]:
        """One scenario per axis value (a single (None, base) pair when nothing varies)"""
        if self.vary is None:
            yield None, self.base
            return
        field = "n_sectors" if self.vary is SweepAxis.N else "u1_colluding"
        for value in self.vary_values:
            yield value, self.base.evolve(**{field: value})

    def points(self) -> Iterator[Tuple[Optional[int], ScenarioConfig]]:
        for axis_value, config in self.configs():
            for snr_db in self.snr_grid:
                yield axis_value, config.evolve(snr_db=snr_db)


class SweepRow(BaseModel):
    snr_db: float
    axis_value: Optional[int] = None
    sop_analytic: Optional[float] = Field(None, ge=0, le=1)
    sop_exact: Optional[float] = Field(None, ge=0, le=1)
    sop_mc: Optional[float] = Field(None, ge=0, le=1)
    ci_low: Optional[float] = Field(None, ge=0, le=1)
    ci_high: Optional[float] = Field(None, ge=0, le=1)


class SweepResult(BaseModel):
    rows: List[SweepRow] = Field(default_factory=list)

    @model_validator(mode="after")
    def sort_rows(self) -> "SweepResult":
        self.rows = sorted(
            self.rows,
            key=lambda r: (r.axis_value is not None, r.axis_value or 0, r.snr_db),
        )
        return self

    def curves(self) -> List[Tuple[Optional[int], List[SweepRow]]]:
        """Rows grouped by axis value, in row order"""
        grouped: List[Tuple[Optional[int], List[SweepRow]]] = []
        for row in self.rows:
            if grouped and grouped[-1][0] == row.axis_value:
                grouped[-1][1].append(row)
            else:
                grouped.append((row.axis_value, [row]))
        return grouped


# ============================================
# Comparison Models
# ============================================

class ComparisonPoint(BaseModel):
    snr_db: float
    axis_value: Optional[int] = None
    sop_analytic: float
    sop_mc: float
    deviation_log10: Optional[float] = None
    flagged: bool = False


class CurveSummary(BaseModel):
    axis_value: Optional[int] = None
    max_deviation_log10: Optional[float] = None
    mean_deviation_standard: Optional[float] = None
    mean_deviation_paper_printed: Optional[float] = None
    better_preset: Optional[WeightsChoice] = None
    flagged_points: int = 0
    crossing_snr_db: Optional[float] = None
    mc_crossing_snr_db: Optional[float] = None
    best_case_crossing_snr_db: Optional[float] = None


class PointResult(BaseModel):
    """Everything evaluated at one (axis value, SNR) point of a sweep"""
    snr_db: float
    axis_value: Optional[int] = None
    sop_analytic: Optional[float] = None
    sop_standard: Optional[float] = None
    sop_paper_printed: Optional[float] = None
    sop_exact: Optional[float] = None
    sop_best_case: Optional[float] = None
    mc: Optional[McEstimate] = None

    def to_row(self) -> SweepRow:
        return SweepRow(
            snr_db=self.snr_db,
            axis_value=self.axis_value,
            sop_analytic=self.sop_analytic,
            sop_exact=self.sop_exact,
            sop_mc=self.mc.p_hat if self.mc else None,
            ci_low=self.mc.ci_low if self.mc else None,
            ci_high=self.mc.ci_high if self.mc else None,
        )
