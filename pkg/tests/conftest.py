import numpy as np
import pytest

from dynamics import PendulumParams, PendulumState
from generator import Bitstream


@pytest.fixture
def unit_params():
    return PendulumParams(m1=1.0, m2=1.0, L1=1.0, L2=1.0, g=9.81, d=1.0)


@pytest.fixture
def released_state():
    return PendulumState(theta1=2.0, theta2=2.0, omega1=0.0, omega2=0.0)


@pytest.fixture
def random_bits():
    """Factory for numpy-backed reference streams of a given length"""

    def make(n: int, seed: int = 12345) -> Bitstream:
        rng = np.random.default_rng(seed)
        return Bitstream(rng.integers(0, 2, size=n, dtype=np.uint8))

    return make


@pytest.fixture
def zeros():
    def make(n: int) -> Bitstream:
        return Bitstream(np.zeros(n, dtype=np.uint8))

    return make
