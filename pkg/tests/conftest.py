"""共享夹具：几个手算过的联络及其 PW 几何（session 级缓存）"""

from pathlib import Path

import pytest

from src.projective import AffineConnection
from src.pwext import build
from src.symcore import get_chart

GALLERY = Path(__file__).resolve().parent.parent / "gallery"


@pytest.fixture(scope="session")
def gallery():
    return GALLERY


@pytest.fixture(scope="session")
def chart2():
    return get_chart(2)


@pytest.fixture(scope="session")
def chart3():
    return get_chart(3)


@pytest.fixture(scope="session")
def flat2():
    return AffineConnection.flat(2)


@pytest.fixture(scope="session")
def flat3():
    return AffineConnection.flat(3)


@pytest.fixture(scope="session")
def e2():
    """Γ_11^2 = x2：Ric_11 = P_11 = 1，W = 0，Y = 0"""
    return AffineConnection.from_entries(2, {(0, 1, 0): "x2"})


@pytest.fixture(scope="session")
def e3():
    """Γ_11^2 = x3：Ricci 平直，W = R"""
    return AffineConnection.from_entries(3, {(0, 1, 0): "x3"})


@pytest.fixture(scope="session")
def cotton2():
    """Γ_11^2 = x2^2：P_11 = 2 x2，Y_121 = 2"""
    return AffineConnection.from_entries(2, {(0, 1, 0): "x2^2"})


@pytest.fixture(scope="session")
def nonspecial2():
    """Γ_11^1 = x2，坐标体积下不特殊"""
    return AffineConnection.from_entries(2, {(0, 0, 0): "x2"})


@pytest.fixture(scope="session")
def pw_flat2(flat2):
    return build(flat2)


@pytest.fixture(scope="session")
def pw_flat3(flat3):
    return build(flat3)


@pytest.fixture(scope="session")
def pw_e2(e2):
    return build(e2)


@pytest.fixture(scope="session")
def pw_e3(e3):
    return build(e3)


@pytest.fixture(scope="session")
def pw_cotton2(cotton2):
    return build(cotton2)
