"""Report models assembled by the services and rendered by the CLI."""
from typing import List, Optional

from pydantic import BaseModel, Field

from entbuffer.core.protocols.bounds import CliffordBounds
from entbuffer.core.schemas.params import SystemParams
from entbuffer.core.schemas.results import (
    ConvergenceReport,
    LevelHistogram,
    LifetimeFit,
    MetricsResult,
    NoiseThreshold,
    RegimePoint,
    SimEstimate,
)


class AnalysisReport(BaseModel):
    """Closed-form view of one configuration."""
    params: SystemParams
    f_new: float
    jump_label: str
    metrics: Optional[MetricsResult] = None
    series: Optional[MetricsResult] = None
    no_pumping_fidelity: float
    dF_dq: Optional[float] = None
    threshold: Optional[NoiseThreshold] = None
    availability: float
    pi_empty: float
    pi_head: List[float] = Field(default_factory=list)
    bounds: Optional[CliffordBounds] = None
    band: Optional[RegimePoint] = None
    notes: List[str] = Field(default_factory=list)


class SweepRow(BaseModel):
    param_value: float
    availability: float
    avg_fidelity: float


class RegimesReport(BaseModel):
    points: List[RegimePoint]
    universal_cap: float
    replacement: RegimePoint


class SimulationRun(BaseModel):
    estimate: SimEstimate
    histogram: Optional[LevelHistogram] = None
    lifetime: Optional[LifetimeFit] = None
    convergence: Optional[ConvergenceReport] = None


class CheckResult(BaseModel):
    name: str
    passed: bool
    detail: str = ""


class VerificationReport(BaseModel):
    checks: List[CheckResult] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def failures(self) -> List[CheckResult]:
        return [check for check in self.checks if not check.passed]
