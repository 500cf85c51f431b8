"""Event loop for a single replication of the buffer process.

Generation and consumption candidates are drawn as independent exponentials and
the earlier one fires. The stored fidelity is kept as (value at last update,
update time) and decayed only when it is read.
"""
import logging
import math
from typing import List, NamedTuple, Optional

import numpy as np

from entbuffer.core.schemas.params import SimConfig, SuccessMode
from entbuffer.core.schemas.results import SimEvent
from entbuffer.core.states import depolarize

logger = logging.getLogger(__name__)

_BLOCK = 256


class ReplicationOutcome(NamedTuple):
    """State at the horizon. ``fidelity`` is 0.0 when the memory is empty."""
    fidelity: float
    level: Optional[int]
    lifetime: Optional[float]
    clamp_events: int
    events: Optional[List[SimEvent]] = None


class _DrawBuffer:
    """Standard exponentials and uniforms drawn from the generator in blocks."""

    def __init__(self, rng: np.random.Generator):
        self.rng = rng
        self._exp = rng.standard_exponential(_BLOCK)
        self._uni = rng.random(_BLOCK)
        self._i = 0
        self._j = 0

    def exponential(self) -> float:
        if self._i == _BLOCK:
            self._exp = self.rng.standard_exponential(_BLOCK)
            self._i = 0
        value = self._exp[self._i]
        self._i += 1
        return float(value)

    def uniform(self) -> float:
        if self._j == _BLOCK:
            self._uni = self.rng.random(_BLOCK)
            self._j = 0
        value = self._uni[self._j]
        self._j += 1
        return float(value)


def replication_rng(seed: int, index: int) -> np.random.Generator:
    """Independent stream for replication ``index``, fixed by (seed, index) alone."""
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(index,)))


def run_one(config: SimConfig, rng: np.random.Generator) -> ReplicationOutcome:
    """Simulate one replication from an empty memory at t = 0 up to ``config.t_sim``."""
    params = config.params
    lam, mu, gamma, q, p = params.lam, params.mu, params.gamma, params.q, params.p
    jump = config.jump
    f_new = config.f_new
    t_sim = config.t_sim
    linear_p = config.success_mode is SuccessMode.LINEAR_P
    events: Optional[List[SimEvent]] = [] if config.record_events else None
    draws = _DrawBuffer(rng)

    t = 0.0
    stored = False
    f_last = 0.0
    t_last = 0.0
    t_fill = 0.0
    level = 0
    clamps = 0

    while True:
        dt_gen = draws.exponential() / lam if lam > 0 else math.inf
        dt_con = draws.exponential() / mu if mu > 0 else math.inf
        dt = min(dt_gen, dt_con)
        if t + dt > t_sim:
            break
        t += dt

        if dt_gen <= dt_con:
            if not stored:
                stored, f_last, t_last, t_fill, level = True, f_new, t, t, 0
                if events is not None:
                    events.append(SimEvent(time=t, kind="fill", level=0, fidelity=f_new))
                continue
            if draws.uniform() >= q:
                if events is not None:
                    events.append(SimEvent(time=t, kind="discard", level=level))
                continue
            f_now = depolarize(f_last, t - t_last, gamma)
            if linear_p:
                success = jump.success_probability(f_now)
                if not 0.0 <= success <= 1.0:
                    clamps += 1
                    logger.warning(f"Success probability {success!r} clamped at F={f_now!r}")
                    success = min(max(success, 0.0), 1.0)
            else:
                success = p
            if draws.uniform() < success:
                f_last, t_last = jump(f_now), t
                level += 1
                if events is not None:
                    events.append(SimEvent(time=t, kind="pump-success", level=level, fidelity=f_last))
            else:
                stored = False
                if events is not None:
                    events.append(SimEvent(time=t, kind="pump-failure", level=level, fidelity=f_now))
        elif stored:
            stored = False
            if events is not None:
                events.append(SimEvent(time=t, kind="consume", level=level,
                                       fidelity=depolarize(f_last, t - t_last, gamma)))
        elif events is not None:
            events.append(SimEvent(time=t, kind="idle-consume"))

    if not stored:
        return ReplicationOutcome(0.0, None, None, clamps, events)
    return ReplicationOutcome(depolarize(f_last, t_sim - t_last, gamma), level, t_sim - t_fill, clamps, events)


def run_replications(config: SimConfig, start: int, stop: int) -> List[ReplicationOutcome]:
    """Replications start..stop-1, each on its own (seed, index) stream."""
    return [run_one(config, replication_rng(config.seed, i)) for i in range(start, stop)]
