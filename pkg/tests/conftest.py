import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(42)


def random_patch(rng, size=None, dtype="int"):
    """Random odd-sized patch; intensities 0..255."""
    if size is None:
        size = int(rng.choice([3, 5, 7, 9, 11]))
    if dtype == "int":
        return rng.integers(0, 256, (size, size)).astype(np.float64)
    return rng.uniform(0.0, 255.0, (size, size))
