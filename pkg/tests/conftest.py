import os
import sys
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

import hypothesis
import pytest

from algebra.quivers import build_cycle_quiver
from analysis.gr_engine import get_engine, reset_engines
from utils.config import EngineSettings

hypothesis.settings.register_profile("fast", max_examples=20, deadline=None,
                                    suppress_health_check=[hypothesis.HealthCheck.function_scoped_fixture])
hypothesis.settings.register_profile("ci", max_examples=200, deadline=None,
                                    suppress_health_check=[hypothesis.HealthCheck.function_scoped_fixture])
hypothesis.settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "fast"))


@pytest.fixture(autouse=True)
def fresh_engines():
    """Every test starts with an empty engine registry"""
    reset_engines()
    yield
    reset_engines()


@pytest.fixture
def kronecker():
    return build_cycle_quiver("+-")


@pytest.fixture
def sink_source_quiver():
    return build_cycle_quiver("+-+-")


@pytest.fixture
def three_two():
    """Three clockwise arrows then two counterclockwise ones"""
    return build_cycle_quiver("+++--")


@pytest.fixture
def symbolic():
    return EngineSettings(random_fast_path=False)


@pytest.fixture
def kronecker_engine(kronecker):
    return get_engine(kronecker)
