import pytest
import bench
import helpers


@pytest.fixture
def triangle():
    """ Three servers, every pair linked """
    return helpers.make_network([1.0, 2.0, 4.0], [(0, 1, 2.0), (0, 2, 4.0), (1, 2, 1.0)])


@pytest.fixture
def diamond():
    """ f0 fans out to f1 and f2, which join in f3 """
    return helpers.make_augmented(
        [2.0, 1.0, 3.0, 1.0], [(0, 1, 2.0), (0, 2, 1.0), (1, 3, 1.0), (2, 3, 2.0)])


@pytest.fixture
def small_spec():
    return bench.WorkloadSpec(seed=7, n_servers=5, connectivity=0.6, n_dags=12,
                              dag_size_range=(2, 8))
