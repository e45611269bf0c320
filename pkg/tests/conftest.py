"""Shared fixtures: one truncated wandering-interval map and one rigid rotation."""
import math

import pytest

from denjoylab import make_denjoy, make_map

SQRT2_M1 = math.sqrt(2.0) - 1.0
GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@pytest.fixture(scope="session")
def denjoy50():
    """Truncated insertion map at alpha = sqrt(2) - 1, N = 50, mass 1/2."""
    return make_denjoy(SQRT2_M1, N=50, mass=0.5)


@pytest.fixture(scope="session")
def golden_rotation():
    return make_map({"kind": "rigid", "alpha": GOLDEN})
