"""Closed-form analysis, parameter sweeps and regime bands for a run configuration."""
import logging
from typing import List

import numpy as np

from entbuffer.core.analytics.derivatives import dF_dq
from entbuffer.core.analytics.fidelity import as_linear, avg_fidelity_linear, avg_fidelity_series, no_pumping_fidelity
from entbuffer.core.analytics.steady_state import steady_state
from entbuffer.core.analytics.thresholds import noise_threshold
from entbuffer.core.errors import AnalyticsUnavailableError, DomainError
from entbuffer.core.protocols.bounds import clifford_bounds
from entbuffer.core.protocols.jumps import LinearJump, RationalJump
from entbuffer.core.regimes import clifford_band, default_q_grid, replacement_point, universal_cap
from entbuffer.core.schemas.reports import AnalysisReport, RegimesReport, SweepRow
from entbuffer.core.schemas.run_config import RunConfig
from entbuffer.settings import get_settings

logger = logging.getLogger(__name__)

SWEEP_PARAMETERS = ("q", "p", "gamma", "mu", "lambda")
PI_HEAD = 6


def _jump_label(config: RunConfig) -> str:
    protocol = config.protocol
    if protocol.jump is not None:
        return f"J(F) = {protocol.jump.a!r} F + {protocol.jump.b!r}"
    return f"catalogue row {protocol.id}"


class AnalysisService:
    """Service for closed-form evaluation of run configurations."""

    def __init__(self):
        self.settings = get_settings()

    def analyze(self, config: RunConfig) -> AnalysisReport:
        """Availability, average fidelity, noise threshold and the steady-state head."""
        params = config.system_params()
        f_new = config.protocol.fresh_fidelity
        state = steady_state(params)
        jump = config.protocol.jump_function()
        rho = config.protocol.bell_state()
        notes = []

        metrics = series = derivative = threshold = None
        try:
            linear: LinearJump = as_linear(jump)
        except AnalyticsUnavailableError as e:
            linear = None
            notes.append(f"{e}; closed forms need a constant success probability, use 'simulate'")
        if linear is not None:
            metrics = avg_fidelity_linear(params, linear, f_new)
            series = avg_fidelity_series(params, linear, f_new)
            derivative = dF_dq(params, linear, f_new)
            threshold = noise_threshold(linear, params.p, params.mu, f_new)
        if config.system.p is None and isinstance(jump, RationalJump) and not jump.has_constant_success:
            notes.append(f"availability and pi use the success probability at F_new, p = {params.p!r}")
        if params.q == 0:
            notes.append("q = 0: no pumping, the fidelity is the no-pumping baseline")

        bounds = band = None
        if rho is not None and rho.f > 0.5:
            bounds = clifford_bounds(rho)
            band = clifford_band(params.rates, rho, [params.q])[0]

        logger.info(f"Analyzed configuration with {_jump_label(config)}")
        return AnalysisReport(
            params=params,
            f_new=f_new,
            jump_label=_jump_label(config),
            metrics=metrics,
            series=series,
            no_pumping_fidelity=no_pumping_fidelity(params.rates, f_new),
            dF_dq=derivative,
            threshold=threshold,
            availability=state.availability,
            pi_empty=state.pi_empty,
            pi_head=state.head(PI_HEAD),
            bounds=bounds,
            band=band,
            notes=notes,
        )

    def sweep(self, config: RunConfig, param: str, start: float, stop: float, steps: int) -> List[SweepRow]:
        """Closed-form availability and fidelity over a uniform grid of one parameter."""
        if param not in SWEEP_PARAMETERS:
            raise DomainError(f"Sweep parameter must be one of {', '.join(SWEEP_PARAMETERS)}, got {param!r}")
        if steps < 2 or not start < stop:
            raise DomainError(f"Sweep range needs from < to and at least 2 steps, got [{start}, {stop}] x {steps}")
        linear = as_linear(config.protocol.jump_function())
        f_new = config.protocol.fresh_fidelity
        base = config.system.model_dump(by_alias=True)
        if base["p"] is None:
            base["p"] = config.success_probability()

        rows = []
        for value in np.linspace(start, stop, steps):
            system = config.system.model_validate({**base, param: float(value)})
            params = RunConfig(system=system, protocol=config.protocol).system_params()
            metrics = avg_fidelity_linear(params, linear, f_new)
            rows.append(SweepRow(param_value=float(value), availability=metrics.availability,
                                 avg_fidelity=metrics.avg_consumed_fidelity))
        logger.info(f"Swept {param} over {steps} points in [{start}, {stop}]")
        return rows

    def regimes(self, config: RunConfig) -> RegimesReport:
        """Clifford band over the default q grid plus the cap and the replacement point."""
        rho = config.require_rho()
        rates = config.system_params().rates
        points = clifford_band(rates, rho, default_q_grid(self.settings.q_grid_points))
        return RegimesReport(
            points=points,
            universal_cap=universal_cap(rates, rho.f),
            replacement=replacement_point(rates, rho.f),
        )
