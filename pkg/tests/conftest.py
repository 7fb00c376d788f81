import time

import pytest
from hypothesis import HealthCheck, settings

from semisimp.dataset64 import f64
from semisimp.galois import automorphisms

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


BUILD_SECONDS: dict = {}


@pytest.fixture(scope="session")
def f64_table():
    """Automorphism table of the degree-64 field, built once per session (about a minute)."""
    start = time.perf_counter()
    table = automorphisms(f64())
    BUILD_SECONDS["f64"] = time.perf_counter() - start
    return table
