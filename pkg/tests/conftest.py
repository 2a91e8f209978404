import pytest

from celltopo import generators


@pytest.fixture(scope="session")
def octa():
    return generators.octahedron()


@pytest.fixture(scope="session")
def simplex3():
    return generators.simplex_boundary(3)


@pytest.fixture(scope="session")
def simplex4():
    return generators.simplex_boundary(4)


@pytest.fixture(scope="session")
def cube3():
    return generators.cube_boundary(3)


@pytest.fixture(scope="session")
def cube4():
    return generators.cube_boundary(4)


@pytest.fixture(scope="session")
def torus44():
    return generators.torus_grid(4, 4)
