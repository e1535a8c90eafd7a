import os
import random

import pytest
from hypothesis import HealthCheck, settings

SEED = int(os.environ.get("EQALG_SEED", "0"))

settings.register_profile(
    "eqalg",
    max_examples=60,
    deadline=None,
    derandomize="EQALG_SEED" not in os.environ,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("eqalg")


@pytest.fixture
def rng():
    return random.Random(SEED)
