"""Discrete-event Monte Carlo of the 1G1B buffer."""
from entbuffer.core.simulation.engine import ReplicationOutcome, replication_rng, run_one, run_replications
from entbuffer.core.simulation.estimators import build_timeline, estimate, summarize
from entbuffer.core.simulation.diagnostics import (
    convergence_check,
    level_histogram,
    lifetime_samples,
    sample_level_fidelity,
)

__all__ = [
    "ReplicationOutcome",
    "replication_rng",
    "run_one",
    "run_replications",
    "build_timeline",
    "estimate",
    "summarize",
    "convergence_check",
    "level_histogram",
    "lifetime_samples",
    "sample_level_fidelity",
]
