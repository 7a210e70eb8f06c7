import numpy as np
import pytest

from causalkit import TimeSeriesPanel


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def small_panel(rng):
    n = 40
    return TimeSeriesPanel({
        "x": rng.standard_normal(n),
        "y": rng.standard_normal(n),
        "z": rng.standard_normal(n),
        "w": rng.standard_normal(n),
    })
