import pytest

from f2_subspaces.config import configure_settings
from f2_subspaces.rng import make_rng


@pytest.fixture
def rng():
    return make_rng(20240611)


@pytest.fixture(autouse=True)
def default_settings():
    configure_settings(None)
    yield
    configure_settings(None)
