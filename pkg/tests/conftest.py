import pytest

from boolsep.bounds import sweep


@pytest.fixture(scope="session")
def sweep4():
    return sweep(4, workers=1)


@pytest.fixture(scope="session")
def sweep3_approx():
    return sweep(3, with_approx=True, workers=1)
