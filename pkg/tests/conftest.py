import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from abcdepth import DataMatrix

settings.register_profile(
    "repo",
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repo")

TRIANGLE = [(0.0, 1.0), (-1.0, 0.0), (1.0, 0.0)]


@pytest.fixture
def line3():
    return DataMatrix.from_points(np.array([[0.0], [1.0], [2.0]]))


@pytest.fixture
def tri():
    return DataMatrix.from_points(np.array(TRIANGLE))


@pytest.fixture
def write_csv(tmp_path):
    def _write(text, name="data.csv"):
        path = tmp_path / name
        path.write_text(text)
        return str(path)

    return _write
