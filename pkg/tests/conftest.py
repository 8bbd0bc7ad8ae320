import pytest

from dllite.fixtures import example_i, example_i_single, example_j
from dllite.syntax import parse_kb, parse_query


@pytest.fixture
def ex_i():
    return example_i()


@pytest.fixture
def ex_i_single():
    return example_i_single()


@pytest.fixture
def ex_j():
    return example_j()


def kb(text):
    return parse_kb(text)


def q(text):
    return parse_query(text)
