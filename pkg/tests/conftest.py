import random

import pytest


@pytest.fixture
def rng() -> random.Random:
    """Seeded generator so randomized tests are reproducible."""
    return random.Random(0xC0FFEE)
