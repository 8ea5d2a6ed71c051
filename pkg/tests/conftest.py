import pytest

from conjstab import Alphabet


@pytest.fixture(scope="session")
def ab():
    return Alphabet("ab")
