import pytest

from gauge_workbench.oracle import RadialGrid


@pytest.fixture(scope="session")
def default_grid() -> RadialGrid:
    return RadialGrid()


@pytest.fixture(scope="session")
def small_grid() -> RadialGrid:
    # coarsest grid the validator accepts; used where speed matters more
    # than the last two digits
    return RadialGrid(n_points=2000)
