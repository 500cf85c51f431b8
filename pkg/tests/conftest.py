"""Shared fixtures: reference systems, fresh states and seeded generators."""
import numpy as np
import pytest

from entbuffer.core.protocols.jumps import LinearJump
from entbuffer.core.schemas.params import LinkRates, SystemParams
from entbuffer.core.states import BellDiagonalState
from entbuffer.settings import get_settings


@pytest.fixture(autouse=True)
def fresh_settings():
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


@pytest.fixture
def reference_params():
    """lambda = 1, mu = 0.1, Gamma = 1/40, q = 1, p = 0.75."""
    return SystemParams(lam=1.0, mu=0.1, gamma=0.025, q=1.0, p=0.75)


@pytest.fixture
def reference_jump():
    return LinearJump(a=1 / 3, b=0.6)


@pytest.fixture
def band_rho():
    return BellDiagonalState(f=0.8, l1=0.1, l2=0.1, l3=0.0)


@pytest.fixture
def band_rates():
    return LinkRates(lam=1.0, mu=0.1, gamma=0.05)
