"""
graph6 格式解析器

graph6 是图普查文件使用的简单图 ASCII 编码。解码交给 networkx，
这里先逐字节检查格式，使错误带有字节偏移。
"""

from collections import Counter
from dataclasses import dataclass
from typing import List, Optional, Tuple, Union

import networkx as nx

from ..exceptions import FormatError, NotCubicError
from ..monitoring.logger import setup_logger
from ..multipole.core import Multipole
from .base import BaseParser

logger = setup_logger(__name__)

HEADER = ">>graph6<<"
MIN_BYTE, MAX_BYTE = 63, 126


def _decode_order(data: bytes, base: int, source: Optional[str]) -> Tuple[int, int]:
    """解析 N(n)，返回 (n, 头部字节数)"""
    if not data:
        raise FormatError("graph6 行为空", source=source, offset=base)
    if data[0] != MAX_BYTE:
        return data[0] - MIN_BYTE, 1
    if len(data) < 4:
        raise FormatError("graph6 顶点数字段被截断", source=source, offset=base + len(data))
    if data[1] != MAX_BYTE:
        width, start = 3, 1
    else:
        if len(data) < 8:
            raise FormatError("graph6 顶点数字段被截断", source=source, offset=base + len(data))
        width, start = 6, 2
    n = 0
    for b in data[start:start + width]:
        n = (n << 6) | (b - MIN_BYTE)
    return n, start + width


def validate_graph6(line: str, source: Optional[str] = None) -> bytes:
    """
    检查一行 graph6 的格式。

    返回:
        去掉可选头部后的字节串

    引发:
        FormatError: 非法字符、长度不符或填充位非零，offset 为行内字节偏移
    """
    try:
        raw = line.rstrip("\r\n").encode("ascii")
    except UnicodeEncodeError as e:
        raise FormatError("graph6 中的非 ASCII 字符", source=source, offset=e.start) from None
    base = len(HEADER) if raw.startswith(HEADER.encode()) else 0
    data = raw[base:]

    for i, b in enumerate(data):
        if not MIN_BYTE <= b <= MAX_BYTE:
            raise FormatError(f"graph6 中的非法字节 {b}", source=source, offset=base + i)

    n, size = _decode_order(data, base, source)
    bits = n * (n - 1) // 2
    expected = size + (bits + 5) // 6
    if len(data) < expected:
        raise FormatError(
            f"graph6 行被截断: {n} 个顶点需要 {expected} 字节，实际 {len(data)}",
            source=source, offset=base + len(data)
        )
    if len(data) > expected:
        raise FormatError("graph6 行有多余字节", source=source, offset=base + expected)

    padding = (6 - bits % 6) % 6
    if padding and (data[-1] - MIN_BYTE) & ((1 << padding) - 1):
        raise FormatError("graph6 填充位非零", source=source, offset=base + len(data) - 1)
    return data


def decode_graph6(line: str, source: Optional[str] = None) -> nx.Graph:
    """把一行 graph6 解码为 networkx 简单图"""
    return nx.from_graph6_bytes(validate_graph6(line, source))


@dataclass(frozen=True)
class SimpleGraph:
    """
    graph6 解码得到的简单图，边按 (min, max) 字典序排列。

    解析时不要求三正则；需要三正则图的操作通过 to_multipole 转换。
    """
    num_vertices: int
    pairs: Tuple[Tuple[int, int], ...]

    @property
    def num_edges(self) -> int:
        return len(self.pairs)

    @property
    def degrees(self) -> Tuple[int, ...]:
        counts = Counter(v for pair in self.pairs for v in pair)
        return tuple(counts[v] for v in range(self.num_vertices))

    @property
    def is_cubic(self) -> bool:
        return all(d == 3 for d in self.degrees)

    def to_multipole(self, operation: str = "graph6 图") -> Multipole:
        """
        引发:
            NotCubicError: 某个顶点的度数不是 3
        """
        for vertex, degree in enumerate(self.degrees):
            if degree != 3:
                raise NotCubicError(operation, vertex=vertex, degree=degree)
        return Multipole.from_edge_list(self.num_vertices, self.pairs)


def parse_graph6(line: str, source: Optional[str] = None) -> SimpleGraph:
    """把一行 graph6 解析为简单图"""
    graph = decode_graph6(line, source)
    pairs = tuple(sorted(tuple(sorted(edge)) for edge in graph.edges()))
    return SimpleGraph(graph.number_of_nodes(), pairs)


def write_graph6(g: Union[Multipole, SimpleGraph]) -> str:
    """
    把简单图编码为一行 graph6（不含头部和换行）。

    引发:
        FormatError: 图有悬挂边或平行边
    """
    graph = nx.Graph()
    graph.add_nodes_from(range(g.num_vertices))
    if isinstance(g, SimpleGraph):
        graph.add_edges_from(g.pairs)
        return nx.to_graph6_bytes(graph, header=False).decode("ascii").strip()

    if not g.is_graph:
        raise FormatError("graph6 不能编码悬挂边")
    for edge in g.edges:
        if graph.has_edge(edge.u, edge.v):
            raise FormatError(f"graph6 不能编码平行边 ({edge.u}, {edge.v})")
        graph.add_edge(edge.u, edge.v)
    return nx.to_graph6_bytes(graph, header=False).decode("ascii").strip()


class Graph6Parser(BaseParser[List[SimpleGraph]]):
    """graph6 文件: 每行一个图"""

    def __init__(self):
        super().__init__("graph6", [".g6", ".graph6"])

    def parse(self, text: str, source: Optional[str] = None) -> List[SimpleGraph]:
        graphs = []
        for lineno, line in enumerate(text.splitlines(), start=1):
            if not line.strip():
                continue
            try:
                graphs.append(parse_graph6(line, source))
            except FormatError as e:
                raise FormatError(e.reason, source=source, offset=e.offset, line=lineno) from None
        logger.debug(f"graph6: 读取了 {len(graphs)} 个图")
        return graphs

    def write(self, obj: List[Union[Multipole, SimpleGraph]]) -> str:
        return "".join(write_graph6(g) + "\n" for g in obj)
