import random

import pytest

from fpmod.functors import clear_functor_caches
from fpmod.ring import clear_caches


@pytest.fixture
def rng(request):
    # stable per test, independent of execution order
    return random.Random(request.node.nodeid)


@pytest.fixture(autouse=True, scope="module")
def _fresh_caches():
    clear_caches()
    clear_functor_caches()
    yield
