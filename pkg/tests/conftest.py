import math

import numpy as np
import pytest
from hypothesis import strategies as st

from sphwigner.sampling import SampleConfig, sample_tetrahedra
from sphwigner.tetra import TetLengths

HALF_PI = math.pi / 2
THIRD_PI = math.pi / 3


@pytest.fixture
def octant():
    return TetLengths.uniform(HALF_PI)


@pytest.fixture
def regular():
    return TetLengths.uniform(THIRD_PI)


@pytest.fixture(scope="session")
def population_1000():
    """The shared acceptance population: seed 42, default sampler settings."""
    return sample_tetrahedra(SampleConfig(seed=42, count=1000))


unit_normal = st.floats(-3.0, 3.0, allow_nan=False)


@st.composite
def sphere_points(draw, dim, count):
    pts = []
    for _ in range(count):
        v = np.array([draw(unit_normal) for _ in range(dim)])
        n = np.linalg.norm(v)
        if n < 1e-3:
            v = np.eye(dim)[len(pts) % dim]
            n = 1.0
        pts.append(v / n)
    return np.array(pts)


_acceptance = []


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance: exit criteria")


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py" in report.nodeid:
        _acceptance.append(report)


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for rep in _acceptance:
        name = rep.nodeid.split("::", 1)[1]
        metrics = ", ".join(
            f"{k}={v:.3e}" if isinstance(v, float) else f"{k}={v}" for k, v in rep.user_properties
        )
        tr.write_line(f"{'PASS' if rep.passed else 'FAIL'}  {name}  {metrics}")
