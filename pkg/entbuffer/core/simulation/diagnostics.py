"""Empirical checks of the stationary laws against their closed forms."""
import logging
import math
from typing import Optional, Tuple

import numpy as np
from scipy import stats

from entbuffer.core.analytics.fidelity import as_linear
from entbuffer.core.analytics.steady_state import steady_state
from entbuffer.core.errors import DegenerateSystemError, DomainError, InsufficientSamplesError
from entbuffer.core.protocols.jumps import JumpFunction
from entbuffer.core.schemas.params import SimConfig, SuccessMode, SystemParams
from entbuffer.core.schemas.results import ConvergenceReport, LevelHistogram, LifetimeFit, SimEstimate, Timeline
from entbuffer.core.simulation.engine import run_replications
from entbuffer.core.simulation.estimators import build_timeline, estimate

logger = logging.getLogger(__name__)

EMPTY_KEY = "empty"

# one-sample KS critical value at 1%, asymptotic
KS_COEFFICIENT_1PCT = 1.63


def _require_constant(config: SimConfig):
    if config.success_mode is not SuccessMode.CONSTANT_P:
        raise DomainError("Stationary-law diagnostics need a constant success probability")


def _timeline(config: SimConfig, timeline: Optional[Timeline]) -> Timeline:
    return timeline if timeline is not None else build_timeline(run_replications(config, 0, config.n_samples))


def level_histogram(config: SimConfig, timeline: Optional[Timeline] = None) -> LevelHistogram:
    """Level frequencies at the horizon and their total-variation distance to pi."""
    _require_constant(config)
    timeline = _timeline(config, timeline)
    n = len(timeline.levels)
    counts = {}
    for level in timeline.levels:
        key = EMPTY_KEY if level is None else str(level)
        counts[key] = counts.get(key, 0) + 1
    top = max((lv for lv in timeline.levels if lv is not None), default=0)

    state = steady_state(config.params)
    closed = {EMPTY_KEY: state.pi_empty}
    closed.update({str(i): state.pi(i) for i in range(top + 1)})
    empirical = {key: counts.get(key, 0) / n for key in closed}
    # closed-form mass above the highest observed level has empirical frequency 0
    distance = 0.5 * (sum(abs(empirical[k] - closed[k]) for k in closed) + state.tail_mass(top + 1))
    return LevelHistogram(empirical=empirical, closed_form=closed, tv_distance=distance, n_samples=n)


def lifetime_samples(config: SimConfig, timeline: Optional[Timeline] = None) -> LifetimeFit:
    """Time since the stored link was created, tested against Exp(beta) with a KS test."""
    _require_constant(config)
    beta = config.params.beta
    if beta <= 0:
        raise DegenerateSystemError("beta = mu + lambda q (1 - p) is zero: lifetimes do not converge")
    timeline = _timeline(config, timeline)
    samples = np.array([c for c in timeline.lifetimes if c is not None], dtype=float)
    if samples.size < 2:
        raise InsufficientSamplesError(
            f"Only {samples.size} replications hold a link", availability=samples.size / len(timeline.lifetimes),
            n_samples=len(timeline.lifetimes), n_nonempty=int(samples.size),
        )
    result = stats.kstest(samples, "expon", args=(0.0, 1.0 / beta))
    critical = KS_COEFFICIENT_1PCT / math.sqrt(samples.size)
    logger.debug(f"Lifetime KS D={result.statistic:.4g} (critical {critical:.4g}) over {samples.size} samples")
    return LifetimeFit(
        beta=beta,
        n_nonempty=int(samples.size),
        ks_statistic=float(result.statistic),
        p_value=float(result.pvalue),
        critical_value_1pct=critical,
        samples=tuple(samples.tolist()),
    )


def _z(x: float, y: float, ex: float, ey: float) -> float:
    spread = math.sqrt(ex * ex + ey * ey)
    if spread == 0:
        return 0.0 if x == y else math.inf
    return (x - y) / spread


def convergence_check(config: SimConfig) -> ConvergenceReport:
    """Compare estimates at t_sim and 2 t_sim; the second run uses seed + 1."""
    first: SimEstimate = estimate(config)
    doubled = config.model_copy(update={"t_sim": 2 * config.t_sim, "seed": (config.seed + 1) % 2 ** 64})
    second: SimEstimate = estimate(doubled)
    report = ConvergenceReport(
        at_horizon=first,
        at_double_horizon=second,
        fidelity_z=_z(first.avg_fidelity, second.avg_fidelity, first.stderr_fidelity, second.stderr_fidelity),
        availability_z=_z(first.availability, second.availability,
                          first.stderr_availability, second.stderr_availability),
    )
    if not report.converged:
        logger.warning(f"Estimates at t_sim={config.t_sim} and {2 * config.t_sim} differ by more than 1 sigma")
    return report


def sample_level_fidelity(i: int, params: SystemParams, jump: JumpFunction, f_new: float, n: int,
                          rng: np.random.Generator) -> Tuple[float, float]:
    """Monte Carlo mean and standard error of F^(i)(Q_0, ..., Q_i) with Q ~ Exp(mu + lambda q)."""
    if i < 0 or n < 2:
        raise DomainError(f"Need a level >= 0 and at least two samples, got i={i}, n={n}")
    if params.alpha <= 0:
        raise DegenerateSystemError("alpha = mu + lambda q is zero: holding times are infinite")
    linear = as_linear(jump)
    holding = rng.exponential(1.0 / params.alpha, size=(n, i + 1))
    decay = np.exp(-params.gamma * holding)
    f = 0.25 + (f_new - 0.25) * decay[:, 0]
    for k in range(1, i + 1):
        f = 0.25 + (linear.a * f + linear.b - 0.25) * decay[:, k]
    return float(f.mean()), float(f.std(ddof=1) / math.sqrt(n))
