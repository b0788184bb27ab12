import pytest
from hypothesis import HealthCheck, settings

# derandomized so that the suite is reproducible run to run
settings.register_profile("repo", derandomize=True, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("repo")


@pytest.fixture
def petersen():
    from drgmotion.params import IntersectionArray
    return IntersectionArray((3, 2), (1, 1))
