import numpy as np
import pytest

from kpband.core import LatticeParams


@pytest.fixture
def lat():
    return LatticeParams()


@pytest.fixture
def rng():
    return np.random.default_rng(987654321)
