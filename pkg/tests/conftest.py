import numpy as np
import pytest
from hypothesis import settings

from chaotic_modem import chaos

settings.register_profile("default", deadline=None, max_examples=100)
settings.load_profile("default")


@pytest.fixture(scope="session")
def maps():
    return chaos.default_map_pair()


@pytest.fixture(scope="session")
def attractor_x0(maps):
    """Initial conditions already on each map's attractor (no clamping in the frame)."""
    def pick(bit, seed=0, count=1):
        rng = np.random.default_rng(seed)
        start = rng.uniform(-0.5, 0.5, count)
        return chaos.orbit(maps[bit], start, 60)[:, -1]
    return pick
