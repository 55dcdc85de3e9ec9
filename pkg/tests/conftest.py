import random

import pytest

from findom.fixtures import koszul_example


@pytest.fixture
def example():
    return koszul_example()


@pytest.fixture
def rng():
    return random.Random(20240611)
