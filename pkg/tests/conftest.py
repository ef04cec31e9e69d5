import numpy as np
import pytest

from harmtrans import bie, curve_family

TWO_PI = 2.0 * np.pi


def nodes(n):
    return TWO_PI * np.arange(n) / n


@pytest.fixture(scope="session")
def circle():
    return curve_family("circle", 0.0)


@pytest.fixture(scope="session")
def ellipse_half():
    return curve_family("ellipse", 0.5)


@pytest.fixture(scope="session")
def circle_sys_256(circle):
    return bie.build_system(circle, 256)


@pytest.fixture(scope="session")
def ellipse_sys_256(ellipse_half):
    return bie.build_system(ellipse_half, 256)
