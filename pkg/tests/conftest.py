import numpy as np
import pytest

from polmaj import GridSpec, discretize_state, lorenz
from polmaj.cli import parse_state_spec

DEFAULT_GRID = GridSpec(400, 400)
DOUBLED_GRID = GridSpec(800, 800)


class DistCache:
    """Session-wide memo of discretized distributions and Lorenz curves.

    Keys are CLI state designators ("coherent:n=2", "thermal:nbar=10", ...), so
    every test module talks about states the same way.  Only the default grid is
    cached; other grids are computed on demand and returned uncached to keep the
    footprint bounded.
    """

    def __init__(self):
        self._dists = {}
        self._curves = {}

    def state(self, spec):
        return parse_state_spec(spec).obj

    def dist(self, spec, grid=DEFAULT_GRID):
        key = (spec, grid)
        if grid is not DEFAULT_GRID:
            return discretize_state(self.state(spec), grid)
        if key not in self._dists:
            self._dists[key] = discretize_state(self.state(spec), grid)
        return self._dists[key]

    def curve(self, spec, grid=DEFAULT_GRID):
        key = (spec, grid)
        if grid is not DEFAULT_GRID:
            return lorenz(self.dist(spec, grid))
        if key not in self._curves:
            self._curves[key] = lorenz(self.dist(spec, grid))
        return self._curves[key]


@pytest.fixture(scope="session")
def cache():
    return DistCache()


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(20260810)
