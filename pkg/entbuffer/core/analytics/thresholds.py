"""Decoherence threshold above which pumping pays off."""
import logging

from entbuffer.core.protocols.jumps import LinearJump
from entbuffer.core.schemas.results import NoiseThreshold, ThresholdVerdict

logger = logging.getLogger(__name__)

# |y| below this makes the threshold undefined
DEGENERATE_TOL = 1e-15


def noise_threshold(jump: LinearJump, p: float, mu: float, f_new: float) -> NoiseThreshold:
    """Gamma_th = 4 mu p x / y with x = F(1 - a) - b and y = 4F(1 - p) + (4b + a)p - 1.

    For Gamma above the threshold dF/dq is positive. When x <= 0 pumping helps at
    every Gamma and the verdict is always-beneficial (the value is then <= 0).
    """
    a, b = jump.a, jump.b
    x = f_new * (1.0 - a) - b
    y = 4 * f_new * (1.0 - p) + (4 * b + a) * p - 1.0
    if abs(y) <= DEGENERATE_TOL:
        logger.warning(f"Noise threshold undefined for a={a}, b={b}, p={p}, F_new={f_new}")
        return NoiseThreshold(verdict=ThresholdVerdict.DEGENERATE)
    value = 4 * mu * p * x / y
    verdict = ThresholdVerdict.ALWAYS_BENEFICIAL if x <= 0 else ThresholdVerdict.THRESHOLD
    return NoiseThreshold(verdict=verdict, gamma_threshold=value)
