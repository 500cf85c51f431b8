"""Closed-form steady state, availability and average consumed fidelity."""
from entbuffer.core.analytics.steady_state import SteadyState, availability, pumping_count_pmf, steady_state
from entbuffer.core.analytics.fidelity import (
    avg_fidelity_linear,
    avg_fidelity_series,
    c_i_linear,
    fidelity_after_levels,
    fidelity_after_levels_closed_form,
    level_fidelity_coefficients,
    no_pumping_fidelity,
)
from entbuffer.core.analytics.derivatives import dF_dp, dF_dq
from entbuffer.core.analytics.thresholds import noise_threshold

__all__ = [
    "SteadyState",
    "availability",
    "pumping_count_pmf",
    "steady_state",
    "avg_fidelity_linear",
    "avg_fidelity_series",
    "c_i_linear",
    "fidelity_after_levels",
    "fidelity_after_levels_closed_form",
    "level_fidelity_coefficients",
    "no_pumping_fidelity",
    "dF_dp",
    "dF_dq",
    "noise_threshold",
]
