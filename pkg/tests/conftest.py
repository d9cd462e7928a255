import pytest
from hypothesis import HealthCheck, settings

from skewknh.field import FieldCtx
from skewknh.ring import SkewPoly

settings.register_profile("repo", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("repo")


@pytest.fixture(scope="session")
def F4():
    return FieldCtx(2, 2)


@pytest.fixture(scope="session")
def F4d():
    """F_4 with the inner derivation gamma = 1."""
    return FieldCtx(2, 2, gamma=1)


@pytest.fixture(scope="session")
def alpha(F4):
    return F4.z


@pytest.fixture
def P(F4):
    return lambda *c: SkewPoly(F4, c)
