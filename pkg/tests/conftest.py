import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from pycod import analytic_field, cod
from pycod.generators import preset_field

settings.register_profile(
    "default", max_examples=60, deadline=None,
    suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


class Decomposed:
    def __init__(self, field):
        self.field = field
        self.analytic = analytic_field(field)
        self.result = cod(self.analytic)


@pytest.fixture(scope="session")
def sloshing():
    return Decomposed(preset_field("sloshing"))


@pytest.fixture(scope="session")
def damped():
    return Decomposed(preset_field("damped"))


@pytest.fixture(scope="session")
def fm():
    return Decomposed(preset_field("fm-cubic"))


@pytest.fixture(scope="session")
def chebyshev():
    return Decomposed(preset_field("sloshing-chebyshev"))


@pytest.fixture
def rng():
    return np.random.default_rng(0)
