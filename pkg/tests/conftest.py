import pytest
from hypothesis import HealthCheck, settings

from bhconstants.numerics import DEFAULT_CONTEXT, PrecisionContext

# multiprecision examples are slow per-case; wall-clock deadlines only add
# flakiness here
settings.register_profile(
    "numeric",
    deadline=None,
    max_examples=50,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("numeric")


@pytest.fixture(scope="session")
def ctx128() -> PrecisionContext:
    return DEFAULT_CONTEXT


@pytest.fixture(scope="session")
def ctx256() -> PrecisionContext:
    return PrecisionContext(mantissa_bits=256)
