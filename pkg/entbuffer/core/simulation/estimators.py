"""Availability and average-fidelity estimators over a batch of replications."""
import logging
import math
from typing import Sequence

import numpy as np

from entbuffer.core.errors import InsufficientSamplesError
from entbuffer.core.schemas.params import SimConfig
from entbuffer.core.schemas.results import SimEstimate, Timeline
from entbuffer.core.simulation.engine import ReplicationOutcome, run_replications

logger = logging.getLogger(__name__)


def summarize(outcomes: Sequence[ReplicationOutcome]) -> SimEstimate:
    """A' = N'/N with sqrt(A'(1 - A')/N), and the mean over nonempty samples with its standard error.

    Outcomes are reduced in replication order so the result does not depend on
    how the batch was split across workers.
    """
    n = len(outcomes)
    fidelities = np.array([o.fidelity for o in outcomes if o.level is not None], dtype=float)
    n_nonempty = int(fidelities.size)
    a = n_nonempty / n if n else 0.0
    stderr_a = math.sqrt(a * (1.0 - a) / n) if n else 0.0
    if n_nonempty < 2:
        raise InsufficientSamplesError(
            f"Only {n_nonempty} of {n} replications hold a link; fidelity standard error is undefined",
            availability=a, n_samples=n, n_nonempty=n_nonempty, stderr_availability=stderr_a,
        )
    mean = float(fidelities.mean())
    stderr_f = math.sqrt(float(np.sum((fidelities - mean) ** 2)) / (n_nonempty * (n_nonempty - 1)))
    clamps = sum(o.clamp_events for o in outcomes)
    if clamps:
        logger.warning(f"{clamps} success-probability clamp events across {n} replications")
    return SimEstimate(
        avg_fidelity=mean,
        stderr_fidelity=stderr_f,
        availability=a,
        stderr_availability=stderr_a,
        n_samples=n,
        n_nonempty=n_nonempty,
        clamp_events=clamps,
    )


def build_timeline(outcomes: Sequence[ReplicationOutcome]) -> Timeline:
    events = [o.events for o in outcomes]
    return Timeline(
        levels=[o.level for o in outcomes],
        lifetimes=[o.lifetime for o in outcomes],
        fidelities=[o.fidelity for o in outcomes],
        events=events if all(e is not None for e in events) else None,
    )


def estimate(config: SimConfig) -> SimEstimate:
    """Run every replication in this process and summarize."""
    return summarize(run_replications(config, 0, config.n_samples))
