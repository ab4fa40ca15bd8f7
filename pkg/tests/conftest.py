import pytest

from fqsquares import Field


@pytest.fixture(scope="session")
def F3():
    return Field(3)


@pytest.fixture(scope="session")
def F5():
    return Field(5)


@pytest.fixture(scope="session")
def F9():
    # x^2 + 1 has no root in F_3
    return Field(3, 2, [1, 0, 1])


@pytest.fixture(scope="session")
def F25():
    # 2 is a non-square mod 5, so x^2 - 2 = x^2 + 3 is irreducible
    return Field(5, 2, [3, 0, 1])


@pytest.fixture(scope="session")
def small_fields(F3, F5, F9, F25):
    return [F3, F5, F9, F25]
