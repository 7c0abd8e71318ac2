import random

import pytest

from adaptorsig.params import generate_params


@pytest.fixture(scope="session")
def t0():
    return generate_params("T0", random.Random(0))


@pytest.fixture(scope="session")
def t1():
    return generate_params("T1", random.Random(0))


@pytest.fixture(scope="session")
def t2():
    return generate_params("T2", random.Random(0))


@pytest.fixture()
def rng():
    return random.Random(0xC0FFEE)
