"""
量子迹计算系统 - 测试夹具
单个三角形、正方形与一次刺穿环面
"""

import pytest

from formats.file_protocol import parse_link, parse_surface

TRIANGLE_TEXT = """\
# 单个三角形，三条边都是边界边
triangles 1
edge e1 1.1 @boundary
edge e2 1.2 @boundary
edge e3 1.3 @boundary
"""

SQUARE_TEXT = """\
# 两个三角形沿对角线 e1 粘成正方形
triangles 2
edge e1 1.1 2.1
edge e2 1.3 @boundary
edge e3 2.2 @boundary
edge e4 2.3 @boundary
edge e5 1.2 @boundary
"""

TORUS_TEXT = """\
# 一次刺穿环面
triangles 2
edge e1 1.1 2.1
edge e2 1.2 2.2
edge e3 1.3 2.3
"""

# (1,0) 曲线：面 1 中 1→2，面 2 中 2→1
TORUS_CURVE_TEXT = """\
arc 1 1 2 0
arc 2 2 1 0
"""


@pytest.fixture
def triangle():
    return parse_surface(TRIANGLE_TEXT, source="triangle")


@pytest.fixture
def square():
    return parse_surface(SQUARE_TEXT, source="square")


@pytest.fixture
def torus():
    return parse_surface(TORUS_TEXT, source="torus")


@pytest.fixture
def corner_link(triangle):
    """三角形中一条截角 (1,2) 的弧"""
    return parse_link("arc 1 1 2 0\n", triangle)


@pytest.fixture
def torus_curve(torus):
    return parse_link(TORUS_CURVE_TEXT, torus)


@pytest.fixture
def write_file(tmp_path):
    """把文本写到临时文件并返回路径"""
    def _write(name: str, text: str) -> str:
        path = tmp_path / name
        path.write_text(text, encoding='utf-8')
        return str(path)
    return _write
