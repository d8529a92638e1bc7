import pytest

from srpd import builtin


@pytest.fixture(scope="session")
def s3_pd():
    return builtin.distribution("s3")


@pytest.fixture(scope="session")
def s7_pd():
    return builtin.distribution("s7")


@pytest.fixture(scope="session")
def s3_fields():
    return builtin.s3()


@pytest.fixture(scope="session")
def s7_fields():
    return builtin.s7()
