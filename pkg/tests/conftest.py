import random

import pytest
from hypothesis import HealthCheck, settings

from gfd.weights import ALPHA, ONE, POWER_T, WeightSpec

settings.register_profile("ci", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("ci")

STANDARD_WEIGHTS = {"one": ONE, "alpha": ALPHA, "power-t": POWER_T, "tau": WeightSpec.from_string("tau:alpha:2")}


@pytest.fixture
def rng():
    return random.Random(1234)
