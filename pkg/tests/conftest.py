import pytest

from powerposet.catalog import CATALOG, antichain, chain, diamond


@pytest.fixture
def small_posets():
    """The carriers every exhaustive sweep should cover quickly."""
    return [chain(1), chain(2), chain(3), antichain(2), antichain(3), diamond()]


@pytest.fixture
def catalog():
    return dict(CATALOG)
