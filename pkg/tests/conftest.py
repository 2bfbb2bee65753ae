import pytest
from hypothesis import HealthCheck, settings

from soranispell import fixtures

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(scope="session")
def speller():
    return fixtures.sample_speller()


@pytest.fixture(scope="session")
def dictionary():
    return fixtures.sample_dictionary()


@pytest.fixture(scope="session")
def rules():
    return fixtures.sample_rules()
