import pytest

from uniquesums import GSet, make_group


@pytest.fixture
def z5():
    return make_group([5])


@pytest.fixture
def z7():
    return make_group([7])


def gset(group, *elems):
    """Shorthand: ints for rank-1 groups, tuples otherwise."""
    return GSet.make(group, elems)
