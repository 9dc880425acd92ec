import os

import pytest
from hypothesis import HealthCheck, settings

from dipole_atlas.series import Truncation

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", deadline=None, max_examples=400,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture(scope="session")
def T6():
    return Truncation.uniform(6)


@pytest.fixture(scope="session")
def T8():
    return Truncation.uniform(8)
