"""
pytest 公共配置：项目根目录加入 sys.path，并提供常用实例
"""

import sys
from pathlib import Path

import pytest

project_root = Path(__file__).parent
if str(project_root) not in sys.path:
    sys.path.insert(0, str(project_root))

from onion_framework.config.settings import reload_settings
from onion_framework.workflows.generators import counterexample, crossing_grid, onion, onion_star


@pytest.fixture(autouse=True)
def fresh_settings():
    """每个测试结束后恢复配置文件与环境变量中的设置"""
    yield
    reload_settings()


@pytest.fixture
def onion_instance():
    return onion()


@pytest.fixture
def star2():
    return onion_star(2)


@pytest.fixture
def counterexample2():
    return counterexample(2)


@pytest.fixture
def grid_3x2():
    """P 升序、Q 降序：Q_0 是每条 P 的第一次交叉"""
    return crossing_grid(3, 2, "ascending", "descending")


@pytest.fixture
def grid_5x3():
    return crossing_grid(5, 3, "ascending", "descending")


@pytest.fixture
def grid_7x7():
    return crossing_grid(7, 7, "ascending", "descending")


@pytest.fixture
def grid_9x5():
    return crossing_grid(9, 5, "descending", "ascending")
