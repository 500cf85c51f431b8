"""Parallel replication runs with an order-independent reduction."""
import logging
from concurrent.futures import ProcessPoolExecutor
from itertools import repeat
from typing import List, Optional, Tuple

from entbuffer.core.schemas.params import SimConfig, SuccessMode
from entbuffer.core.schemas.reports import SimulationRun
from entbuffer.core.schemas.results import SimEstimate
from entbuffer.core.simulation.diagnostics import convergence_check, level_histogram, lifetime_samples
from entbuffer.core.simulation.engine import ReplicationOutcome, run_replications
from entbuffer.core.simulation.estimators import build_timeline, summarize
from entbuffer.settings import get_settings

logger = logging.getLogger(__name__)


class SimulationService:
    """Fans replications out over worker processes.

    Every replication draws from its own (seed, index) stream and outcomes are
    reduced in index order, so results do not depend on the worker count.
    """

    def __init__(self, threads: Optional[int] = None):
        self.settings = get_settings()
        self.threads = threads or self.settings.threads

    def _chunks(self, n: int) -> List[Tuple[int, int]]:
        workers = max(1, min(self.threads, n))
        size, extra = divmod(n, workers)
        bounds, start = [], 0
        for k in range(workers):
            stop = start + size + (1 if k < extra else 0)
            bounds.append((start, stop))
            start = stop
        return bounds

    def run(self, config: SimConfig) -> List[ReplicationOutcome]:
        chunks = self._chunks(config.n_samples)
        logger.info(f"Running {config.n_samples} replications on {len(chunks)} worker(s)")
        if len(chunks) == 1:
            return run_replications(config, 0, config.n_samples)
        with ProcessPoolExecutor(max_workers=len(chunks)) as pool:
            parts = pool.map(run_replications, repeat(config), [c[0] for c in chunks], [c[1] for c in chunks])
            return [outcome for part in parts for outcome in part]

    def estimate(self, config: SimConfig) -> SimEstimate:
        return summarize(self.run(config))

    def simulate(self, config: SimConfig, diagnostics: bool = False) -> SimulationRun:
        """Estimate plus, when asked, the horizon-doubling check and (constant success only) the law checks."""
        outcomes = self.run(config)
        estimate = summarize(outcomes)
        if not diagnostics:
            return SimulationRun(estimate=estimate)
        convergence = convergence_check(config)
        if config.success_mode is not SuccessMode.CONSTANT_P:
            logger.warning("Level and lifetime diagnostics need constant success probability; skipped")
            return SimulationRun(estimate=estimate, convergence=convergence)
        timeline = build_timeline(outcomes)
        return SimulationRun(
            estimate=estimate,
            histogram=level_histogram(config, timeline),
            lifetime=lifetime_samples(config, timeline),
            convergence=convergence,
        )
