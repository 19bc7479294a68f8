import pytest

from monoclone.fields import FieldParam


@pytest.fixture(scope="session")
def fp2():
    return FieldParam.from_q(2)


@pytest.fixture(scope="session")
def fp3():
    return FieldParam.from_q(3)


@pytest.fixture(scope="session")
def fp4():
    return FieldParam.from_q(4)


@pytest.fixture(scope="session")
def fp5():
    return FieldParam.from_q(5)


@pytest.fixture(scope="session")
def lattice3(fp3):
    from monoclone.lattice import enumerate_lattice
    return enumerate_lattice(fp3)


@pytest.fixture(scope="session")
def lattice4(fp4):
    from monoclone.lattice import enumerate_lattice
    return enumerate_lattice(fp4)
