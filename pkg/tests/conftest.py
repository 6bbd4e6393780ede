import pytest

import hardylab as hl


@pytest.fixture(scope="session")
def ball3():
    return hl.ball(3, 1.0)


@pytest.fixture(scope="session")
def strip3():
    return hl.strip(3, 1.0)


@pytest.fixture(scope="session")
def annulus313():
    return hl.annulus(3, 1.0, 3.0)


@pytest.fixture(scope="session")
def punctured3():
    return hl.punctured_space(3)


@pytest.fixture(scope="session")
def punctured_ball3():
    return hl.punctured_ball(3, 2.0)
