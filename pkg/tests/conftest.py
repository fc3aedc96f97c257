import numpy as np
import pytest

from qptk.numerics import Grid, SampledSignal


@pytest.fixture
def unit_gaussian():
    grid = Grid.symmetric(8.0, 1024)
    t = grid.points
    return SampledSignal(grid, (np.pi ** -0.25 * np.exp(-0.5 * t * t)).astype(complex))
