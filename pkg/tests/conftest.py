import pytest
from hypothesis import settings

from amalgamtop import discrete, finite_circle, indiscrete, pseudo_cone, sierpinski

settings.register_profile("suite", max_examples=60, deadline=None)
settings.load_profile("suite")


@pytest.fixture
def s2():
    return sierpinski()


@pytest.fixture
def d2():
    return discrete(2)


@pytest.fixture
def d3():
    return discrete(3)


@pytest.fixture
def circle():
    return finite_circle()


@pytest.fixture
def cone_d2():
    return pseudo_cone(discrete(2))


@pytest.fixture
def zoo(s2, d2, d3, circle):
    return [s2, d2, d3, circle, discrete(1), indiscrete(2), indiscrete(3)]
