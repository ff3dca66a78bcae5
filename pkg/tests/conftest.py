import numpy as np
import pytest


def random_block(rng, n, complex_parts=True):
    re = rng.uniform(-1.0, 1.0, n)
    im = rng.uniform(-1.0, 1.0, n) if complex_parts else np.zeros(n)
    return re + 1j * im


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
