import pytest

from amoebatrop import LaurentFamily, LaurentPolynomial


@pytest.fixture
def line():
    """z1 + z2 + 1."""
    return LaurentPolynomial(2, {(1, 0): 1, (0, 1): 1, (0, 0): 1})


@pytest.fixture
def line_family():
    """z1 + z2 + 1 as a constant family."""
    return LaurentFamily(2, {(1, 0): {0: 1}, (0, 1): {0: 1}, (0, 0): {0: 1}})


@pytest.fixture
def twisted_line_family():
    """t z1 + t^-1 z2 + 1."""
    return LaurentFamily(2, {(1, 0): {1: 1}, (0, 1): {-1: 1}, (0, 0): {0: 1}})


@pytest.fixture
def product_family(line_family, twisted_line_family):
    """(z1 + z2 + 1)(t z1 + t^-1 z2 + 1), the two-line degeneration family."""
    return line_family * twisted_line_family
