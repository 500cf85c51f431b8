"""Average consumed fidelity of the buffered link.

The stored link at level i has had i successful pumps. Its fidelity follows the
recursion F^(i) = D_{t_i}[J(F^(i-1))], and its mean over the exponential level
holding times is c_i. Weighting c_i by the stationary level law gives the
average consumed fidelity.
"""
import logging
from typing import List, Optional, Sequence

import numpy as np

from entbuffer.core.analytics.steady_state import availability, steady_state
from entbuffer.core.errors import DegenerateSystemError, DomainError
from entbuffer.core.protocols.jumps import JumpFunction, LinearJump, RationalJump
from entbuffer.core.schemas.params import LinkRates, SystemParams
from entbuffer.core.schemas.results import MetricsResult
from entbuffer.core.states import depolarize
from entbuffer.settings import get_settings

logger = logging.getLogger(__name__)

# |1 - a gamma| below this is treated as the a gamma = 1 limit
_UNIT_TOL = 1e-14


def as_linear(jump: JumpFunction) -> LinearJump:
    """Linear form of ``jump``; rational jumps must have constant success probability."""
    if isinstance(jump, RationalJump):
        return jump.linearized()
    return jump


def fidelity_after_levels(times: Sequence[float], jump: LinearJump, f_new: float, gamma: float) -> float:
    """Fidelity after holding times t_0..t_i with a jump between consecutive levels."""
    if len(times) == 0:
        raise DomainError("At least one holding time (t_0) is required")
    if any(t < 0 for t in times):
        raise DomainError(f"Holding times must be non-negative, got {list(times)}")
    f = depolarize(f_new, times[0], gamma)
    for t in times[1:]:
        f = depolarize(jump(f), t, gamma)
    return f


def level_fidelity_coefficients(i: int, jump: LinearJump, f_new: float) -> List[float]:
    """Coefficients m_0..m_i with F^(i) = 1/4 + sum_j m_j exp(-gamma (t_j + ... + t_i))."""
    if i < 0:
        raise DomainError(f"Level must be non-negative, got {i}")
    a, b = jump.a, jump.b
    step = a / 4 + b - 0.25
    return [a ** i * (f_new - 0.25)] + [a ** (i - j) * step for j in range(1, i + 1)]


def fidelity_after_levels_closed_form(times: Sequence[float], jump: LinearJump, f_new: float,
                                      gamma: float) -> float:
    """Same value as ``fidelity_after_levels`` from the coefficient expansion."""
    if len(times) == 0:
        raise DomainError("At least one holding time (t_0) is required")
    if any(t < 0 for t in times):
        raise DomainError(f"Holding times must be non-negative, got {list(times)}")
    coefficients = level_fidelity_coefficients(len(times) - 1, jump, f_new)
    # suffix sums t_j + ... + t_i
    elapsed = np.cumsum(np.asarray(times, dtype=float)[::-1])[::-1]
    return 0.25 + float(np.dot(coefficients, np.exp(-gamma * elapsed)))


def _decay_factor(params: SystemParams) -> float:
    if params.alpha <= 0:
        raise DegenerateSystemError("alpha = mu + lambda q is zero: the stored link never leaves level 0")
    return params.decay_factor


def _c_levels(levels: np.ndarray, g: float, jump: LinearJump, f_new: float) -> np.ndarray:
    a, b = jump.a, jump.b
    ag_i = (a * g) ** levels
    if abs(1.0 - a * g) < _UNIT_TOL:
        pump_term = g * levels
    else:
        pump_term = g * (1.0 - ag_i) / (1.0 - a * g)
    return 0.25 + (f_new - 0.25) * ag_i * g + (a / 4 + b - 0.25) * pump_term


def c_i_linear(i: int, params: SystemParams, jump: LinearJump, f_new: float) -> float:
    """Mean fidelity of a link consumed at level i.

    Holding times are Exp(mu + lambda q), so each decay contributes the factor
    gamma = alpha / (alpha + Gamma). The success probability p does not enter.
    """
    if i < 0:
        raise DomainError(f"Level must be non-negative, got {i}")
    g = _decay_factor(params)
    return float(_c_levels(np.array([i]), g, jump, f_new)[0])


def linear_closed_form(params: SystemParams, a: float, b: float, f_new: float) -> float:
    """Average consumed fidelity for raw (a, b) coefficients; bound lines need not be valid jumps."""
    lam, mu, gamma, q, p = params.lam, params.mu, params.gamma, params.q, params.p
    denominator = gamma + mu + lam * q * (1.0 - p * a)
    if denominator <= 0:
        raise DegenerateSystemError("Average fidelity denominator Gamma + mu + lambda q (1 - p a) vanishes")
    numerator = gamma / 4 + b * lam * q * p + f_new * (mu + lam * q * (1.0 - p))
    return numerator / denominator


def avg_fidelity_linear(params: SystemParams, jump: LinearJump, f_new: float) -> MetricsResult:
    """Closed-form availability and average consumed fidelity for a linear jump."""
    value = linear_closed_form(params, jump.a, jump.b, f_new)
    return MetricsResult(
        availability=availability(params),
        avg_consumed_fidelity=value,
        method="closed-form",
    )


def avg_fidelity_series(params: SystemParams, jump: JumpFunction, f_new: float,
                        tol: Optional[float] = None) -> MetricsResult:
    """Average consumed fidelity as sum_i c_i pi(i) / A, truncated at a geometric tail bound.

    Since c_i <= 1 the dropped tail is at most r^(N+1), which is reported as the
    truncation error.
    """
    tol = get_settings().series_tolerance if tol is None else tol
    if tol <= 0:
        raise DomainError(f"Tolerance must be positive, got {tol!r}")
    linear = as_linear(jump)
    state = steady_state(params)
    g = _decay_factor(params)
    n, tail = state.truncation(tol)
    levels = np.arange(n + 1)
    weights = (1.0 - state.ratio) * state.ratio ** levels
    value = float(np.dot(weights, _c_levels(levels, g, linear, f_new)))
    logger.debug(f"Series truncated at N={n} with tail bound {tail:.3g}")
    return MetricsResult(
        availability=state.availability,
        avg_consumed_fidelity=value,
        method="series",
        truncation_index=n,
        truncation_error=tail,
    )


def no_pumping_fidelity(rates: LinkRates, f_new: float) -> float:
    """Average consumed fidelity with q = 0: (Gamma/4 + F_new mu) / (Gamma + mu)."""
    denominator = rates.gamma + rates.mu
    if denominator <= 0:
        raise DegenerateSystemError("Links are never consumed and never decay (Gamma + mu = 0)")
    return (rates.gamma / 4 + f_new * rates.mu) / denominator


def replacement_fidelity(rates: LinkRates, f_new: float) -> float:
    """Replacement protocol (a = 0, b = F_new, p = q = 1): 1/4 + (F_new - 1/4)(lambda + mu)/(Gamma + lambda + mu)."""
    params = SystemParams.from_rates(rates, q=1.0, p=1.0)
    return linear_closed_form(params, 0.0, f_new, f_new)
