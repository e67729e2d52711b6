import pytest

from iqhecke.bundle import load_default_bundle
from iqhecke.classgroup import compute_class_group
from iqhecke.quadfield import make_field


@pytest.fixture(scope="session")
def K17():
    return make_field(17)


@pytest.fixture(scope="session")
def G17(K17):
    return compute_class_group(K17)


@pytest.fixture(scope="session")
def bundle():
    return load_default_bundle()
