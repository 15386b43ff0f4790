import pytest

from alcsim import load_fixture


@pytest.fixture(scope="session")
def family_kb():
    return load_fixture("family")


@pytest.fixture(scope="session")
def fathers_kb():
    return load_fixture("fathers")
