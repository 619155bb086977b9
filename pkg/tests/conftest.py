import pytest

from twistcalc import Context
from twistcalc.hyperboloid import HyperboloidModel
from twistcalc.lie import so21


@pytest.fixture(scope="session")
def ctx():
    return Context(params=("a", "c"), radicals={"sqrt(a)": "a"}, order=4)


@pytest.fixture(scope="session")
def plain_ctx():
    return Context(order=4)


@pytest.fixture(scope="session")
def so21_alg(plain_ctx):
    return so21(plain_ctx)


@pytest.fixture(scope="session")
def model():
    """The full hyperboloid configuration at order 4 (shared; immutable)."""
    return HyperboloidModel(order=4)
