"""System and simulation parameter models."""
from enum import Enum

from pydantic import BaseModel, ConfigDict, Field, model_validator

from entbuffer.core.protocols.jumps import JumpFunction, RationalJump


class LinkRates(BaseModel):
    """Generation, consumption and decoherence rates of a 1G1B node pair."""
    model_config = ConfigDict(frozen=True, populate_by_name=True)

    lam: float = Field(..., gt=0.0, alias="lambda", description="Entanglement generation rate")
    mu: float = Field(..., ge=0.0, description="Consumption request rate")
    gamma: float = Field(..., ge=0.0, description="Depolarizing rate of the stored link")


class SystemParams(LinkRates):
    """Rates plus the pumping policy (attempt probability q, success probability p)."""

    q: float = Field(..., ge=0.0, le=1.0, description="Probability of pumping a fresh link")
    p: float = Field(..., ge=0.0, le=1.0, description="Probability that pumping succeeds")

    @classmethod
    def from_rates(cls, rates: LinkRates, q: float, p: float) -> "SystemParams":
        return cls(lam=rates.lam, mu=rates.mu, gamma=rates.gamma, q=q, p=p)

    @classmethod
    def idle_source(cls, mu: float, gamma: float, q: float = 0.0, p: float = 0.0) -> "SystemParams":
        """Parameters with lambda = 0, which only the simulator accepts."""
        return cls.model_construct(lam=0.0, mu=mu, gamma=gamma, q=q, p=p)

    @property
    def rates(self) -> LinkRates:
        return LinkRates.model_construct(lam=self.lam, mu=self.mu, gamma=self.gamma)

    @property
    def alpha(self) -> float:
        """Rate of leaving a purification level: mu + lambda q."""
        return self.mu + self.lam * self.q

    @property
    def beta(self) -> float:
        """Rate at which the stored link is lost: mu + lambda q (1 - p)."""
        return self.mu + self.lam * self.q * (1.0 - self.p)

    @property
    def delta(self) -> float:
        """Rate of successful pumping: lambda q p."""
        return self.lam * self.q * self.p

    @property
    def level_ratio(self) -> float:
        """pi(i+1) / pi(i) = lambda q p / (mu + lambda q); zero when alpha = 0."""
        return self.delta / self.alpha if self.alpha > 0 else 0.0

    @property
    def decay_factor(self) -> float:
        """E[exp(-gamma Q)] for Q ~ Exp(alpha): alpha / (alpha + gamma)."""
        return self.alpha / (self.alpha + self.gamma)


class SuccessMode(str, Enum):
    """How the simulator draws pumping success."""
    CONSTANT_P = "constant"
    LINEAR_P = "linear"


class SimConfig(BaseModel):
    """N independent replications, each sampled at the horizon t_sim."""
    model_config = ConfigDict(frozen=True)

    params: SystemParams
    jump: JumpFunction
    f_new: float = Field(..., ge=0.25, le=1.0)
    t_sim: float = Field(..., gt=0.0)
    n_samples: int = Field(..., ge=2)
    seed: int = Field(..., ge=0, lt=2 ** 64)
    success_mode: SuccessMode = SuccessMode.CONSTANT_P
    record_events: bool = False

    @model_validator(mode="after")
    def _check_mode(self):
        if self.success_mode is SuccessMode.LINEAR_P and not isinstance(self.jump, RationalJump):
            raise ValueError("Linear success probability needs a rational jump (c, d coefficients)")
        return self

