import math

import pytest

from glenostatics.config import load_reference_config


@pytest.fixture(scope="session")
def reference():
    return load_reference_config()


@pytest.fixture(scope="session")
def geometry(reference):
    return reference.geometry


@pytest.fixture
def small_head(geometry):
    """Dislocation geometry with a 25 mm head and 50 mm tendon."""
    return geometry.replace(head_radius=0.025, tendon_rest_length=0.05)


def deg(x):
    return math.radians(x)
