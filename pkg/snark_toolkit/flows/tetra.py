"""
四面体流搜索

T-流给每条边（包括悬挂边）赋一个四面体的点，使每个顶点的三个值构成四面体的一条线。
搜索在 EdgeAssignmentSearch 引擎上进行: 两个值确定后第三个值由补全表强制。
"""

from functools import lru_cache
from itertools import product
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

from ..exceptions import InvalidFlowError, PointNotInTetrahedronError
from ..geometry.tetrahedron import Tetrahedron, weight
from ..monitoring.logger import setup_logger
from ..multipole.core import Multipole
from ..multipole.search import EdgeAssignmentSearch
from ..types import BoundaryTuple, SearchStats, TetraFlow
from ..utils import parallel_map

logger = setup_logger(__name__)


class TetraFlowSearch(EdgeAssignmentSearch):
    """取值为四面体的点，按点值升序尝试"""

    def __init__(self, m: Multipole, T: Tetrahedron):
        super().__init__(m, sorted(T.points()))
        self.T = T
        self.table = T.third_table

    def third(self, vertex, a, va, b, vb, c):
        return self.table[va][vb]

    def closes(self, vertex, a, va, b, vb, c, vc):
        return self.table[va][vb] == vc


def _symmetry_representatives(T: Tetrahedron) -> List[Tuple[int, int, int]]:
    """
    顶点 0 上三条边的取值代表。

    在角点置换下任意一条线都等价于 {c0, c1, c0⊕c1}，交换 c0、c1 固定中点，
    因此只需枚举中点的位置。
    """
    c0, c1 = T.corners[0], T.corners[1]
    mid = c0 ^ c1
    return [(mid, c0, c1), (c0, mid, c1), (c0, c1, mid)]


def find_tetra_flow(m: Multipole, T: Tetrahedron) -> Tuple[Optional[TetraFlow], SearchStats]:
    """
    寻找一个 T-流。

    参数:
        m: 多极子（悬挂边不受约束）
        T: 四面体

    返回:
        (流或 None, 搜索统计)。返回 None 时统计给出穷举的节点数。
    """
    stats = SearchStats()
    if m.num_vertices == 0:
        return (), stats

    a, b, c = m.incidence[0]
    for values in _symmetry_representatives(T):
        search = TetraFlowSearch(m, T)
        stats.queries += 1
        if not (search.fix(a, values[0]) and search.fix(b, values[1]) and search.fix(c, values[2])):
            continue
        flow = search.first()
        stats.merge(search.stats)
        if flow is not None:
            logger.debug(f"找到 T-流，搜索节点数 {stats.nodes}")
            return flow, stats

    logger.debug(f"不存在 T-流，穷举节点数 {stats.nodes}")
    return None, stats


def _check_boundary(m: Multipole, T: Tetrahedron, boundary: Optional[Mapping[str, int]]) -> Dict[int, int]:
    fixed = {}
    for label, value in (boundary or {}).items():
        if not T.contains(value):
            raise PointNotInTetrahedronError(value, list(T.corners))
        fixed[m.dangling_edge(label)] = value
    return fixed


def enumerate_tetra_flows(
    m: Multipole,
    T: Tetrahedron,
    boundary: Optional[Mapping[str, int]] = None,
    limit: Optional[int] = None
) -> Iterator[TetraFlow]:
    """
    按确定顺序逐个产生扩展给定边界值的全部 T-流。

    参数:
        m: 多极子
        T: 四面体
        boundary: 悬挂边标签到点的映射
        limit: 最多产生的流个数

    引发:
        PointNotInTetrahedronError: 边界值不是四面体的点
        UnknownDanglingError: 边界标签不存在
    """
    fixed = _check_boundary(m, T, boundary)
    search = TetraFlowSearch(m, T)
    for edge, value in sorted(fixed.items()):
        if not search.fix(edge, value):
            return
    yield from search.solutions(limit)


def count_tetra_flows(m: Multipole, T: Tetrahedron) -> int:
    """T-流的总数"""
    return sum(1 for _ in enumerate_tetra_flows(m, T))


def is_valid_tetra_flow(m: Multipole, T: Tetrahedron, flow: Sequence[int]) -> bool:
    """每个值都是四面体的点，且每个顶点的三个值构成四面体的线"""
    if len(flow) != m.num_edges:
        return False
    if any(not T.contains(value) for value in flow):
        return False
    table = T.third_table
    for a, b, c in m.incidence:
        if table[flow[a]][flow[b]] != flow[c]:
            return False
    return True


def heavy_dangling_count(m: Multipole, T: Tetrahedron, flow: Sequence[int]) -> int:
    """
    取中点值（权重 2）的悬挂边条数。

    引发:
        InvalidFlowError: flow 不是 T-流
    """
    if not is_valid_tetra_flow(m, T, flow):
        raise InvalidFlowError("不是有效的 T-流")
    return sum(1 for index, edge in enumerate(m.edges) if edge.v is None and weight(T, flow[index]) == 2)


# ============================================================================
# 边界实现
# ============================================================================

def _boundary_exists(task: Tuple[Multipole, Tuple[int, ...], Tuple[int, ...], Tuple[int, ...]]) -> Tuple[bool, int]:
    """单个存在性查询；进程池的工作函数"""
    m, corners, edges, values = task
    T = Tetrahedron(corners)
    search = TetraFlowSearch(m, T)
    for edge, value in zip(edges, values):
        if not search.fix(edge, value):
            return False, search.stats.nodes
    found = search.first() is not None
    return found, search.stats.nodes


def _orbit_key(T: Tetrahedron, values: Tuple[int, ...]) -> Tuple[int, ...]:
    return min(tuple(table[x] for x in values) for table in T.corner_permutations)


@lru_cache(maxsize=64)
def _realizations(m: Multipole, corners: Tuple[int, ...], labels: Tuple[str, ...], threads: int) -> Tuple[Tuple[BoundaryTuple, ...], int, int]:
    T = Tetrahedron(corners)
    points = sorted(T.points())
    edges = tuple(m.dangling_edge(label) for label in labels)

    candidates: List[BoundaryTuple] = [] if labels else [()]
    if labels:
        for head in product(points, repeat=len(labels) - 1):
            last = 0
            for value in head:
                last ^= value
            if T.contains(last):
                candidates.append(head + (last,))

    orbits: Dict[BoundaryTuple, List[BoundaryTuple]] = {}
    for values in candidates:
        orbits.setdefault(_orbit_key(T, values), []).append(values)

    representatives = sorted(orbits)
    tasks = [(m, corners, edges, rep) for rep in representatives]
    results = parallel_map(_boundary_exists, tasks, threads)

    realizable = []
    nodes = 0
    for rep, (found, searched) in zip(representatives, results):
        nodes += searched
        if found:
            realizable.extend(orbits[rep])
    return tuple(sorted(realizable)), len(representatives), nodes


def boundary_realizations(
    m: Multipole,
    T: Tetrahedron,
    labels: Optional[Sequence[str]] = None,
    threads: int = 1,
    stats: Optional[SearchStats] = None
) -> Tuple[BoundaryTuple, ...]:
    """
    所有可由某个 T-流实现的悬挂边取值元组。

    候选元组满足异或为 0（Kirchhoff 闭包）。每个角点置换轨道只查询一个代表，
    再展开为整条轨道。结果按字典序排列，与并行度无关。

    参数:
        m: 多极子
        T: 四面体
        labels: 悬挂边顺序，默认按边序
        threads: 并行进程数
        stats: 若给出，累加查询次数和搜索节点数
    """
    labels = tuple(labels) if labels is not None else m.dangling_labels
    realizable, queries, nodes = _realizations(m, T.corners, labels, threads)
    if stats is not None:
        stats.queries += queries
        stats.nodes += nodes
        stats.solutions += len(realizable)
    logger.debug(f"{len(labels)} 条悬挂边: {queries} 个轨道代表，{len(realizable)} 个可实现元组")
    return realizable
