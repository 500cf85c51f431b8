"""Fixed points and linear bounds for the nontrivial bilocal Clifford protocols."""
import logging
import math

from pydantic import BaseModel, ConfigDict

from entbuffer.core.errors import NotPurifiableError
from entbuffer.core.protocols.jumps import LinearJump
from entbuffer.core.states import BellDiagonalState

logger = logging.getLogger(__name__)


def _require_purifiable(rho: BellDiagonalState):
    if rho.f <= 0.5:
        raise NotPurifiableError(f"Fresh state must have fidelity above 1/2, got {rho.f!r}")


def f_star(rho: BellDiagonalState) -> float:
    """Highest fidelity reachable by repeated pumping with ``rho``.

    Positive root of (2 - 4F_BD - 4l)F^2 + (4F_BD - 2)F + l = 0 with l = lambda_min.
    """
    _require_purifiable(rho)
    x = 2 * rho.f - 1
    lam = rho.lambda_min
    root = math.sqrt(x * x - 2 * lam * (1 - 2 * rho.f - 2 * lam))
    return (x + root) / (2 * (x + 2 * lam))


def f_intersection(rho: BellDiagonalState) -> float:
    """Fidelity at which the three nontrivial jumps coincide, all equal to sqrt(F_BD/2)."""
    _require_purifiable(rho)
    f = rho.f
    return (4 * f - 2 + 3 * math.sqrt(2 * f)) / (2 * (8 * f - 1))


class CliffordBounds(BaseModel):
    """Linear sandwich a_l F + b_l <= J <= a_u F + b_u and p_l <= p <= p_u."""
    model_config = ConfigDict(frozen=True)

    a_l: float
    b_l: float
    a_u: float
    b_u: float
    p_l: float
    p_u: float
    f_star: float

    def lower(self, f: float) -> float:
        return self.a_l * f + self.b_l

    def upper(self, f: float) -> float:
        return self.a_u * f + self.b_u

    def lower_jump(self) -> LinearJump:
        return LinearJump(a=self.a_l, b=self.b_l)

    def upper_jump(self) -> LinearJump:
        return LinearJump(a=self.a_u, b=self.b_u)


def clifford_bounds(rho: BellDiagonalState) -> CliffordBounds:
    """Bounds valid for every nontrivial bilocal Clifford protocol fed with ``rho``.

    The lower line is the chord joining the lowest jump at F = 1/4, namely
    (F_BD + lambda_min)/2, and the lowest jump at F*, namely J(F*) with lambda_max.
    Concavity of every jump keeps the chord below them on [1/4, F*].
    """
    _require_purifiable(rho)
    f_new = rho.f
    lam_min, lam_max = rho.lambda_min, rho.lambda_max
    fs = f_star(rho)
    numerator = (
        2 * (4 * fs - 1) * (2 * f_new - (f_new + lam_min) * (f_new + lam_max))
        + 4 * (lam_max - lam_min) * (1 - fs)
    )
    denominator = (4 * fs - 1) * ((4 * f_new + 4 * lam_max - 2) * fs + 2 - f_new - lam_max)
    a_l = numerator / denominator
    bounds = CliffordBounds(
        a_l=a_l,
        b_l=(f_new + lam_min) / 2 - a_l / 4,
        a_u=4 * (1 - f_new) / 3,
        b_u=(4 * f_new - 1) / 3,
        p_l=0.5,
        p_u=f_new + lam_max,
        f_star=fs,
    )
    logger.debug(f"Clifford bounds for F_new={f_new}: {bounds}")
    return bounds


class LineBound(BaseModel):
    """Straight line slope * F + intercept."""
    model_config = ConfigDict(frozen=True)

    slope: float
    intercept: float

    def __call__(self, f: float) -> float:
        return self.slope * f + self.intercept


def tangent_at_one(rho: BellDiagonalState) -> LineBound:
    """Tangent of the best nontrivial jump (smallest lambda) at F = 1."""
    _require_purifiable(rho)
    s = rho.f + rho.lambda_min
    slope = 2 * rho.f / (3 * s * s) - 1 / 3
    return LineBound(slope=slope, intercept=rho.f / s - slope)
