import numpy as np
import pytest

from pvgraph import NormalizedSeries, TimeSeries, normalize


def random_normalized(n, seed, dt=1.0):
    """Seeded random series mapped to [0, 1]; generic position w.p. 1."""
    rng = np.random.default_rng(seed)
    return normalize(TimeSeries(values=rng.random(n), dt=dt))


@pytest.fixture
def rand_series():
    return random_normalized
