"""Availability/fidelity operating regimes of bilocal Clifford pumping.

The band between the lower and upper bound protocols contains every nontrivial
bilocal Clifford protocol. The unattainable region is bounded by a hypothetical
protocol with J = 1 and p = 1 applied at q = 1.
"""
import logging
from typing import List, Optional, Sequence

import numpy as np

from entbuffer.core.analytics.fidelity import linear_closed_form, replacement_fidelity
from entbuffer.core.analytics.steady_state import availability
from entbuffer.core.errors import DomainError
from entbuffer.core.protocols.bounds import CliffordBounds, clifford_bounds
from entbuffer.core.schemas.params import LinkRates, SystemParams
from entbuffer.core.schemas.results import BandSlice, RegimePoint
from entbuffer.core.states import BellDiagonalState
from entbuffer.settings import get_settings

logger = logging.getLogger(__name__)


def default_q_grid(points: Optional[int] = None) -> List[float]:
    n = points or get_settings().q_grid_points
    return [float(q) for q in np.linspace(0.0, 1.0, n)]


def _band_point(rates: LinkRates, bounds: CliffordBounds, f_new: float, q: float) -> RegimePoint:
    lower = SystemParams.from_rates(rates, q=q, p=bounds.p_l)
    upper = SystemParams.from_rates(rates, q=q, p=bounds.p_u)
    return RegimePoint(
        q=q,
        availability_lower=availability(lower),
        f_lower=linear_closed_form(lower, bounds.a_l, bounds.b_l, f_new),
        availability_upper=availability(upper),
        f_upper=linear_closed_form(upper, bounds.a_u, bounds.b_u, f_new),
    )


def clifford_band(rates: LinkRates, rho: BellDiagonalState,
                  q_grid: Optional[Sequence[float]] = None) -> List[RegimePoint]:
    """Lower and upper average-fidelity curves over the pumping probability q.

    The lower curve uses (a_l, b_l, p_l) throughout, the upper curve (a_u, b_u, p_u);
    each curve's availability is computed with its own success probability.
    """
    bounds = clifford_bounds(rho)
    grid = default_q_grid() if q_grid is None else list(q_grid)
    if any(not 0.0 <= q <= 1.0 for q in grid):
        raise DomainError(f"Pumping probabilities must lie in [0, 1], got {grid}")
    points = [_band_point(rates, bounds, rho.f, q) for q in grid]
    logger.debug(f"Built Clifford band with {len(points)} points for F_new={rho.f}")
    return points


def universal_cap(rates: LinkRates, f_new: float) -> float:
    """(Gamma/4 + lambda + F_new mu) / (Gamma + mu + lambda); no protocol does better."""
    return linear_closed_form(SystemParams.from_rates(rates, q=1.0, p=1.0), 0.0, 1.0, f_new)


def replacement_point(rates: LinkRates, f_new: float) -> RegimePoint:
    """Replace the stored link by every fresh one: maximum availability lambda / (lambda + mu)."""
    a = availability(SystemParams.from_rates(rates, q=1.0, p=1.0))
    f = replacement_fidelity(rates, f_new)
    return RegimePoint(q=1.0, availability_lower=a, f_lower=f, availability_upper=a, f_upper=f)


def _q_for_availability(rates: LinkRates, p: float, target: float) -> float:
    # invert A = lambda / (lambda + mu + lambda q (1 - p)), clipped to [0, 1]
    if 1.0 - p <= 0:
        return 1.0
    q = (rates.lam / target - rates.lam - rates.mu) / (rates.lam * (1.0 - p))
    return float(min(max(q, 0.0), 1.0))


def band_at_availability(rates: LinkRates, rho: BellDiagonalState, target: float) -> BandSlice:
    """Evaluate both band curves where their availability equals ``target``."""
    if not 0.0 < target <= 1.0:
        raise DomainError(f"Availability must lie in (0, 1], got {target!r}")
    bounds = clifford_bounds(rho)
    q_lower = _q_for_availability(rates, bounds.p_l, target)
    q_upper = _q_for_availability(rates, bounds.p_u, target)
    lower = SystemParams.from_rates(rates, q=q_lower, p=bounds.p_l)
    upper = SystemParams.from_rates(rates, q=q_upper, p=bounds.p_u)
    return BandSlice(
        availability=target,
        q_lower=q_lower,
        f_lower=linear_closed_form(lower, bounds.a_l, bounds.b_l, rho.f),
        q_upper=q_upper,
        f_upper=linear_closed_form(upper, bounds.a_u, bounds.b_u, rho.f),
    )
