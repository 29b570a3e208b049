"""
测试共用的夹具和慢测试开关

标记为 slow 的测试只在环境变量 SNARK_RUN_SLOW=1 时运行。
"""

import os

import pytest

from snark_toolkit.geometry.tetrahedron import Tetrahedron
from snark_toolkit.multipole.builders import k4, petersen, prism, theta


def pytest_collection_modifyitems(config, items):
    if os.getenv("SNARK_RUN_SLOW") == "1":
        return
    skip_slow = pytest.mark.skip(reason="慢测试，设置 SNARK_RUN_SLOW=1 启用")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture
def T() -> Tetrahedron:
    return Tetrahedron()


@pytest.fixture
def petersen_graph():
    return petersen()


@pytest.fixture
def k4_graph():
    return k4()


@pytest.fixture
def theta_graph():
    return theta()


@pytest.fixture
def prism_graph():
    return prism()
