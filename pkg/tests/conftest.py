import numpy as np
import pytest

from skeinlab import io, traintrack

CORPUS = ("punctured_torus", "three_punctured_sphere", "four_punctured_sphere",
          "twice_punctured_torus")


def load(name):
    return traintrack.load_triangulation_file(io.data_path(f"{name}.json"))


@pytest.fixture(scope="session")
def torus():
    return load("punctured_torus")


@pytest.fixture(scope="session", params=CORPUS)
def surface(request):
    return load(request.param)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
