import pytest

from klc.codes import weight_distribution_dp, weight_distribution_macwilliams
from klc.field import Field


@pytest.fixture(scope="session")
def f3():
    return Field(1)


@pytest.fixture(scope="session")
def f9():
    return Field(2)


@pytest.fixture(scope="session")
def f27():
    return Field(3)


@pytest.fixture(scope="session")
def q9_dists(f9):
    """Full q=9 weight distributions by both methods, computed once."""
    out = {}
    for tag in ("so3", "o3", "sp2"):
        out[(tag, "dp")] = weight_distribution_dp(f9, tag).counts
        out[(tag, "mw")] = weight_distribution_macwilliams(f9, tag).counts
    return out
