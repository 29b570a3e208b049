"""
标准图和小偶极子的构造器

每个构造器都有固定的规范编号:

- petersen(): 外圈 0-1-2-3-4-0，辐条 i-(i+5)，内部五角星 (5+i)-(5+(i+2) mod 5)。
  边序为外圈、辐条、内部。
- k4(): 按字典序的 6 条边。
- k33(): 左部 0,1,2，右部 3,4,5，边 (i, 3+j) 按字典序。
- theta(): 两个顶点，三条平行边。
- prism(): 三角形 0,1,2 和 3,4,5，以及 i-(i+3)。
"""

from typing import Callable, Dict

from ..exceptions import SnarkToolkitError
from .core import Dipole, Edge, Multipole, make_label


def petersen() -> Multipole:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Multipole.from_edge_list(10, outer + spokes + inner)


def k4() -> Multipole:
    return Multipole.from_edge_list(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])


def k33() -> Multipole:
    return Multipole.from_edge_list(6, [(i, 3 + j) for i in range(3) for j in range(3)])


def theta() -> Multipole:
    return Multipole.from_edge_list(2, [(0, 1), (0, 1), (0, 1)])


def prism() -> Multipole:
    return Multipole.from_edge_list(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)])


def claw(connector: str = "c") -> Multipole:
    """单顶点三悬挂边的爪，标签为 <connector>:0..2"""
    return Multipole(1, tuple(Edge(0, None, make_label(connector, i)) for i in range(3)))


def pass_through_dipole() -> Dipole:
    """两个相邻顶点构成的直通 (2,2)-极子: 输入都连 0，输出都连 1"""
    edges = (
        Edge(0, None, "in:0"),
        Edge(0, None, "in:1"),
        Edge(0, 1),
        Edge(1, None, "out:0"),
        Edge(1, None, "out:1"),
    )
    return Dipole(Multipole(2, edges), ("in:0", "in:1"), ("out:0", "out:1"))


BUILTIN_GRAPHS: Dict[str, Callable[[], Multipole]] = {
    "petersen": petersen,
    "k4": k4,
    "k33": k33,
    "theta": theta,
    "prism": prism,
}


def get_builtin_graph(name: str) -> Multipole:
    """按名称获取内置图"""
    try:
        return BUILTIN_GRAPHS[name.lower()]()
    except KeyError:
        raise SnarkToolkitError(
            message=f"未知的内置图: {name}",
            error_code="UnknownBuiltinGraph",
            suggestions=[f"可用名称: {', '.join(sorted(BUILTIN_GRAPHS))}"]
        ) from None
