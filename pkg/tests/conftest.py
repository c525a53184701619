import random

import pytest

from dynkd import available_backends


@pytest.fixture(params=available_backends())
def backend(request):
    """Run the test once per importable kernel backend."""
    return request.param


@pytest.fixture
def rng():
    return random.Random(0xD1CE)


def random_tuples(rng, n, k, span=10**6):
    """n distinct k-d tuples with coordinates in [-span, span]."""
    seen = set()
    while len(seen) < n:
        seen.add(tuple(rng.randint(-span, span) for _ in range(k)))
    return list(seen)
