"""JSON run configuration shared by the CLI subcommands."""
import json
import logging
from pathlib import Path
from typing import Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, model_validator

from entbuffer.core.errors import DomainError
from entbuffer.core.protocols.catalogue import catalogue_jump
from entbuffer.core.protocols.jumps import JumpFunction, LinearJump, RationalJump
from entbuffer.core.schemas.params import SimConfig, SuccessMode, SystemParams
from entbuffer.core.states import BellDiagonalState
from entbuffer.settings import get_settings

logger = logging.getLogger(__name__)


class SystemSection(BaseModel):
    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    lam: float = Field(..., ge=0.0, alias="lambda")
    mu: float = Field(..., ge=0.0)
    gamma: float = Field(..., ge=0.0)
    q: float = Field(..., ge=0.0, le=1.0)
    p: Optional[float] = Field(default=None, ge=0.0, le=1.0)


class JumpSection(BaseModel):
    model_config = ConfigDict(extra="forbid")

    a: float
    b: float


class ProtocolSection(BaseModel):
    """Either a linear jump {a, b} or a catalogue row ``id`` with the fresh state ``rho``."""
    model_config = ConfigDict(extra="forbid")

    f_new: Optional[float] = Field(default=None, ge=0.25, le=1.0)
    jump: Optional[JumpSection] = None
    id: Optional[int] = Field(default=None, ge=1, le=7)
    rho: Optional[Tuple[float, float, float, float]] = None

    @model_validator(mode="after")
    def _check_choice(self):
        if (self.jump is None) == (self.id is None):
            raise ValueError("protocol needs exactly one of 'jump' or 'id'")
        if self.id is not None and self.rho is None:
            raise ValueError("protocol 'id' needs the fresh state 'rho' [f, l1, l2, l3]")
        if self.rho is None and self.f_new is None:
            raise ValueError("protocol needs 'f_new' when no 'rho' is given")
        if self.rho is not None and self.f_new is not None and abs(self.rho[0] - self.f_new) > 1e-12:
            raise ValueError(f"f_new={self.f_new} disagrees with rho[0]={self.rho[0]}")
        return self

    @property
    def fresh_fidelity(self) -> float:
        return self.f_new if self.f_new is not None else self.rho[0]

    def bell_state(self) -> Optional[BellDiagonalState]:
        return None if self.rho is None else BellDiagonalState.from_weights(self.rho)

    def jump_function(self) -> JumpFunction:
        if self.jump is not None:
            return LinearJump(a=self.jump.a, b=self.jump.b)
        return catalogue_jump(self.id, self.bell_state())


class SimulationSection(BaseModel):
    model_config = ConfigDict(extra="forbid")

    t_sim: Optional[float] = Field(default=None, gt=0.0)
    n_samples: Optional[int] = Field(default=None, ge=2)
    seed: Optional[int] = Field(default=None, ge=0, lt=2 ** 64)
    mode: Optional[SuccessMode] = None


class RunConfig(BaseModel):
    """Validated contents of a run configuration file."""
    model_config = ConfigDict(extra="forbid")

    system: SystemSection
    protocol: ProtocolSection
    simulation: SimulationSection = Field(default_factory=SimulationSection)

    def success_probability(self) -> float:
        """system.p, or the protocol's own constant success probability.

        A catalogue row whose success depends on the fidelity falls back to its
        value at F = f_new.
        """
        if self.system.p is not None:
            return self.system.p
        jump = self.protocol.jump_function()
        if isinstance(jump, RationalJump):
            return min(max(jump.success_probability(self.protocol.fresh_fidelity), 0.0), 1.0)
        raise DomainError("system.p is required for a linear jump")

    def system_params(self, allow_idle: bool = False) -> SystemParams:
        s = self.system
        p = self.success_probability()
        if s.lam == 0.0:
            if not allow_idle:
                raise DomainError("lambda must be positive outside simulation")
            return SystemParams.idle_source(mu=s.mu, gamma=s.gamma, q=s.q, p=p)
        return SystemParams(lam=s.lam, mu=s.mu, gamma=s.gamma, q=s.q, p=p)

    def require_rho(self) -> BellDiagonalState:
        rho = self.protocol.bell_state()
        if rho is None:
            raise DomainError("This command needs the fresh Bell-diagonal state 'protocol.rho'")
        return rho

    def sim_config(self, t_sim: Optional[float] = None, n_samples: Optional[int] = None,
                   seed: Optional[int] = None, mode: Optional[Union[SuccessMode, str]] = None,
                   record_events: bool = False) -> SimConfig:
        """Command-line values override the file, which overrides the settings defaults."""
        settings = get_settings()
        sim = self.simulation
        return SimConfig(
            params=self.system_params(allow_idle=True),
            jump=self.protocol.jump_function(),
            f_new=self.protocol.fresh_fidelity,
            t_sim=_first(t_sim, sim.t_sim, settings.default_t_sim),
            n_samples=_first(n_samples, sim.n_samples, settings.default_samples),
            seed=_first(seed, sim.seed, settings.default_seed),
            success_mode=SuccessMode(_first(mode, sim.mode, SuccessMode.CONSTANT_P)),
            record_events=record_events,
        )


def _first(*values):
    return next(v for v in values if v is not None)


def load_run_config(path: Union[str, Path]) -> RunConfig:
    """Read and validate a JSON run configuration.

    Raises FileNotFoundError, json.JSONDecodeError or pydantic.ValidationError.
    """
    path = Path(path)
    with path.open(encoding="utf-8") as handle:
        data = json.load(handle)
    config = RunConfig.model_validate(data)
    logger.debug(f"Loaded run configuration from {path}")
    return config
