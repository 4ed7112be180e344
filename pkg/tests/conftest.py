import pytest

from posetsat import (
    GroundSet,
    SetFamily,
    antichain_poset,
    butterfly_poset,
    chain_poset,
    n_poset,
)


@pytest.fixture(scope="session")
def butterfly():
    return butterfly_poset()


@pytest.fixture(scope="session")
def nposet():
    return n_poset()


@pytest.fixture(scope="session")
def two_chain():
    return chain_poset(2)


@pytest.fixture(scope="session")
def two_antichain():
    return antichain_poset(2)


def family(n, *sets):
    return SetFamily.from_sets(GroundSet(n), sets)
