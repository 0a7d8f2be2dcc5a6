import numpy as np
import pytest

from estimator.data import DataSet


def random_spd(rng, dim, floor=0.5):
    a = rng.standard_normal((dim, dim))
    return a @ a.T + floor * np.eye(dim)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def make_spd(rng):
    return lambda dim, floor=0.5: random_spd(rng, dim, floor)


@pytest.fixture
def collinear_data():
    # 3 个内点在 span{e1} 上，2 个外点
    return DataSet([[1.0, 0.0], [2.0, 0.0], [-1.0, 0.0], [0.3, 1.0], [-0.2, 1.0]])


@pytest.fixture
def generic_data():
    # 2 个共线点 + 3 个一般位置点，内点比例 2/5 < 1/2
    return DataSet([[1.0, 0.0], [2.0, 0.0], [0.0, 1.0], [1.0, 1.0], [1.0, -1.0]])


@pytest.fixture
def standard_basis():
    return DataSet(np.eye(4))
