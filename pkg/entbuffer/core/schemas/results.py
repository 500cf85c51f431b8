"""Result models returned by analytics, simulation and regime calculations."""
from enum import Enum
from typing import Dict, List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field


class MetricsResult(BaseModel):
    """Availability and average consumed fidelity of one configuration."""
    model_config = ConfigDict(frozen=True)

    availability: float = Field(..., ge=0.0, le=1.0)
    avg_consumed_fidelity: float
    method: Literal["closed-form", "series"]
    truncation_index: Optional[int] = None
    truncation_error: Optional[float] = None


class ThresholdVerdict(str, Enum):
    THRESHOLD = "threshold"
    ALWAYS_BENEFICIAL = "always-beneficial"
    DEGENERATE = "degenerate"


class NoiseThreshold(BaseModel):
    """Decoherence rate above which pumping raises the average consumed fidelity."""
    model_config = ConfigDict(frozen=True)

    verdict: ThresholdVerdict
    gamma_threshold: Optional[float] = None


class SimEstimate(BaseModel):
    """Monte Carlo estimates with their standard errors."""
    model_config = ConfigDict(frozen=True)

    avg_fidelity: float
    stderr_fidelity: float
    availability: float
    stderr_availability: float
    n_samples: int
    n_nonempty: int
    clamp_events: int = 0


class SimEvent(BaseModel):
    """One entry of a replication's event log."""
    model_config = ConfigDict(frozen=True)

    time: float
    kind: Literal["fill", "pump-success", "pump-failure", "discard", "consume", "idle-consume"]
    level: Optional[int] = None
    fidelity: Optional[float] = None


class Timeline(BaseModel):
    """State of every replication at the horizon; level is None for an empty memory."""
    model_config = ConfigDict(frozen=True)

    levels: List[Optional[int]]
    lifetimes: List[Optional[float]]
    fidelities: List[float]
    events: Optional[List[List[SimEvent]]] = None


class LevelHistogram(BaseModel):
    """Empirical purification-level frequencies against the stationary law."""
    model_config = ConfigDict(frozen=True)

    empirical: Dict[str, float]
    closed_form: Dict[str, float]
    tv_distance: float
    n_samples: int


class LifetimeFit(BaseModel):
    """Current lifetime at the horizon tested against Exp(beta)."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    beta: float
    n_nonempty: int
    ks_statistic: float
    p_value: float
    critical_value_1pct: float
    samples: Tuple[float, ...] = ()

    @property
    def passes(self) -> bool:
        return self.ks_statistic < self.critical_value_1pct


class ConvergenceReport(BaseModel):
    """Estimates at t_sim and 2 t_sim; agreement within one combined standard error."""
    model_config = ConfigDict(frozen=True)

    at_horizon: SimEstimate
    at_double_horizon: SimEstimate
    fidelity_z: float
    availability_z: float

    @property
    def converged(self) -> bool:
        return abs(self.fidelity_z) <= 1.0 and abs(self.availability_z) <= 1.0


class RegimePoint(BaseModel):
    """Lower and upper band values at one pumping probability q."""
    model_config = ConfigDict(frozen=True)

    q: float
    availability_lower: float
    f_lower: float
    availability_upper: float
    f_upper: float


class BandSlice(BaseModel):
    """Both band curves evaluated at one availability, each at its own q."""
    model_config = ConfigDict(frozen=True)

    availability: float
    q_lower: float
    f_lower: float
    q_upper: float
    f_upper: float

    def contains(self, f: float, slack: float = 0.0) -> bool:
        return self.f_lower - slack <= f <= self.f_upper + slack
