import pytest
from hypothesis import HealthCheck, settings

from lacunary_asym import PrecisionContext

# mpmath timings vary wildly across machines; property content matters,
# wall clock does not
settings.register_profile(
    "numeric",
    deadline=None,
    max_examples=30,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("numeric")


@pytest.fixture(scope="session")
def ctx():
    return PrecisionContext()
