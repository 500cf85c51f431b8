"""Stationary law of the purification-level chain.

States are the empty memory and levels 0, 1, 2, ...; the level chain is a
birth-death process with geometric stationary probabilities.
"""
import logging
import math
from typing import List, Tuple

from pydantic import BaseModel, ConfigDict, Field

from entbuffer.core.errors import DegenerateSystemError, DomainError
from entbuffer.core.schemas.params import SystemParams

logger = logging.getLogger(__name__)


def availability(params: SystemParams) -> float:
    """A = 1 - pi_empty = lambda / (lambda + mu + lambda q (1 - p))."""
    lam = params.lam
    return lam / (lam + params.mu + lam * params.q * (1.0 - params.p))


class SteadyState(BaseModel):
    """pi_empty plus the geometric level law pi(i) = A (1 - r) r^i."""
    model_config = ConfigDict(frozen=True)

    pi_empty: float = Field(..., ge=0.0, le=1.0)
    availability: float = Field(..., ge=0.0, le=1.0)
    ratio: float = Field(..., ge=0.0, lt=1.0)

    def pi(self, i: int) -> float:
        if i < 0:
            raise DomainError(f"Purification level must be non-negative, got {i}")
        return self.availability * (1.0 - self.ratio) * self.ratio ** i

    def head(self, n: int) -> List[float]:
        """pi(0) ... pi(n - 1)."""
        return [self.pi(i) for i in range(n)]

    def tail_mass(self, n: int) -> float:
        """Sum of pi(i) for i >= n."""
        return self.availability * self.ratio ** n

    def total_mass(self) -> float:
        """pi_empty plus the geometric sum of all levels."""
        return self.pi_empty + self.pi(0) / (1.0 - self.ratio)

    def truncation(self, tol: float) -> Tuple[int, float]:
        """Index N with sum_{i > N} pi(i) / A below ``tol``, and that relative tail."""
        if tol <= 0:
            raise DomainError(f"Tolerance must be positive, got {tol!r}")
        r = self.ratio
        if r == 0.0:
            return 0, 0.0
        n = max(0, math.ceil(math.log(tol * (1.0 - r)) / math.log(r)))
        return n, r ** (n + 1)


def steady_state(params: SystemParams) -> SteadyState:
    """Stationary distribution of the chain; r = 1 (mu = 0, q = p = 1) has none."""
    r = params.level_ratio
    if r >= 1.0:
        raise DegenerateSystemError(
            "Level ratio lambda q p / (mu + lambda q) equals 1: no stationary distribution"
        )
    a = availability(params)
    state = SteadyState(pi_empty=1.0 - a, availability=a, ratio=r)
    logger.debug(f"Steady state A={a:.6g} ratio={r:.6g}")
    return state


def pumping_count_pmf(params: SystemParams, m: int) -> float:
    """P(M = m) for the number of successful pumps in one link lifetime.

    Each pump attempt succeeds at rate delta and the link is lost at rate beta,
    so M is geometric: (delta / (beta + delta))^m beta / (beta + delta).
    """
    if m < 0:
        raise DomainError(f"Pump count must be non-negative, got {m}")
    total = params.beta + params.delta
    if total <= 0:
        raise DegenerateSystemError("Link is never lost or pumped (beta + delta = 0)")
    return (params.delta / total) ** m * params.beta / total
