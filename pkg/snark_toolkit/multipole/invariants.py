"""
图不变量: 围长、桥、3-边着色、圈边连通度和 snark 报告
"""

from collections import deque
from itertools import combinations
from typing import Any, Dict, FrozenSet, Iterable, List, Optional, Tuple

from ..exceptions import AcyclicGraphError, NotCubicError
from ..monitoring.logger import setup_logger
from .core import Multipole
from .search import EdgeAssignmentSearch

logger = setup_logger(__name__)


def _adjacency(m: Multipole, removed: Iterable[int] = ()) -> List[List[Tuple[int, int]]]:
    skip = set(removed)
    adj: List[List[Tuple[int, int]]] = [[] for _ in range(m.num_vertices)]
    for index, edge in enumerate(m.edges):
        if edge.v is None or index in skip:
            continue
        adj[edge.u].append((edge.v, index))
        adj[edge.v].append((edge.u, index))
    return adj


# ============================================================================
# 围长
# ============================================================================

def girth(m: Multipole) -> int:
    """
    最短圈的长度，只考虑内部边；平行边给出围长 2。

    引发:
        AcyclicGraphError: 图中没有圈
    """
    adj = _adjacency(m)
    best = None
    for root in range(m.num_vertices):
        dist = [-1] * m.num_vertices
        parent_edge = [-1] * m.num_vertices
        dist[root] = 0
        queue = deque([root])
        while queue:
            x = queue.popleft()
            if best is not None and 2 * dist[x] + 1 >= best:
                break
            for y, e in adj[x]:
                if e == parent_edge[x]:
                    continue
                if dist[y] == -1:
                    dist[y] = dist[x] + 1
                    parent_edge[y] = e
                    queue.append(y)
                else:
                    length = dist[x] + dist[y] + 1
                    if best is None or length < best:
                        best = length
    if best is None:
        raise AcyclicGraphError()
    return best


# ============================================================================
# 桥
# ============================================================================

def find_bridges(m: Multipole, removed: Iterable[int] = ()) -> List[int]:
    """
    返回删除 removed 之后剩余内部边中的桥（边索引，升序）。

    迭代式 Tarjan 算法，父边按边索引区分，因此平行边不会被误判为桥。
    """
    adj = _adjacency(m, removed)
    n = m.num_vertices
    disc = [-1] * n
    low = [0] * n
    clock = 0
    bridges = []

    for root in range(n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = clock
        clock += 1
        stack = [(root, -1, iter(adj[root]))]
        while stack:
            v, parent_edge, neighbours = stack[-1]
            advanced = False
            for w, e in neighbours:
                if e == parent_edge:
                    continue
                if disc[w] == -1:
                    disc[w] = low[w] = clock
                    clock += 1
                    stack.append((w, e, iter(adj[w])))
                    advanced = True
                    break
                if disc[w] < low[v]:
                    low[v] = disc[w]
            if advanced:
                continue
            stack.pop()
            if stack:
                p = stack[-1][0]
                if low[v] < low[p]:
                    low[p] = low[v]
                if low[v] > disc[p]:
                    bridges.append(parent_edge)

    return sorted(bridges)


def has_bridge(m: Multipole) -> Optional[int]:
    """返回第一条桥的索引，没有桥时返回 None"""
    bridges = find_bridges(m)
    return bridges[0] if bridges else None


# ============================================================================
# 3-边着色
# ============================================================================

class EdgeColouringSearch(EdgeAssignmentSearch):
    """颜色取 1、2、3；每个顶点的三条边颜色互不相同"""

    def __init__(self, m: Multipole):
        super().__init__(m, (1, 2, 3))

    def third(self, vertex, a, va, b, vb, c):
        return 6 - va - vb if va != vb else 0

    def closes(self, vertex, a, va, b, vb, c, vc):
        return va != vb and vb != vc and va != vc


def three_edge_colouring(m: Multipole) -> Optional[Tuple[int, ...]]:
    """
    返回一个正常 3-边着色（颜色 0、1、2，按边索引），不存在时返回 None。

    顶点 0 的三条边固定为 0、1、2，这不失一般性。

    引发:
        NotCubicError: 输入带有悬挂边
    """
    if not m.is_graph:
        raise NotCubicError("3-边着色", m.dangling_count)
    if m.num_vertices == 0:
        return ()

    search = EdgeColouringSearch(m)
    a, b, _ = m.incidence[0]
    if not (search.fix(a, 1) and search.fix(b, 2)):
        return None
    solution = search.first()
    logger.debug(f"3-边着色搜索节点数: {search.stats.nodes}")
    if solution is None:
        return None
    return tuple(value - 1 for value in solution)


def is_three_edge_colourable(m: Multipole) -> Tuple[bool, Optional[Tuple[int, ...]]]:
    """返回 (是否可 3-边着色, 着色见证)"""
    colouring = three_edge_colouring(m)
    return colouring is not None, colouring


# ============================================================================
# 圈边连通度
# ============================================================================

def _cyclic_components(m: Multipole, removed: FrozenSet[int]) -> int:
    """删除 removed 后含圈的连通分支个数"""
    parent = list(range(m.num_vertices))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    internal = []
    for index, edge in enumerate(m.edges):
        if edge.v is None or index in removed:
            continue
        internal.append(edge)
        ru, rv = find(edge.u), find(edge.v)
        if ru != rv:
            parent[ru] = rv

    vertices: Dict[int, int] = {}
    edges: Dict[int, int] = {}
    for vertex in range(m.num_vertices):
        root = find(vertex)
        vertices[root] = vertices.get(root, 0) + 1
    for edge in internal:
        root = find(edge.u)
        edges[root] = edges.get(root, 0) + 1

    return sum(1 for root, count in vertices.items() if edges.get(root, 0) >= count)


def find_cycle_separating_cut(m: Multipole, k: int) -> Optional[Tuple[int, ...]]:
    """
    寻找大小小于 k 的圈分离边割，找不到时返回 None。

    极小的圈分离边割都是键（删除后恰好两个分支），
    大小为 s 的键等于 s-1 条边加上剩余图中的一座桥，因此枚举 (s-1)-子集并找桥即可。
    """
    if _cyclic_components(m, frozenset()) >= 2:
        return ()

    internal = m.internal_edges()
    for size in range(1, k):
        for subset in combinations(internal, size - 1):
            removed = frozenset(subset)
            for bridge in find_bridges(m, removed):
                cut = removed | {bridge}
                if _cyclic_components(m, cut) >= 2:
                    return tuple(sorted(cut))
    return None


def cyclic_connectivity_at_least(m: Multipole, k: int) -> bool:
    """
    当且仅当不存在大小小于 k 的圈分离边割时返回 True。

    没有两个不交圈的图（如 K4、theta）对任意 k 都满足。
    """
    if not m.is_graph:
        raise NotCubicError("圈边连通度", m.dangling_count)
    cut = find_cycle_separating_cut(m, k)
    if cut is not None:
        logger.debug(f"找到圈分离边割: {list(cut)}")
    return cut is None


# ============================================================================
# snark 报告
# ============================================================================

def snark_report(m: Multipole) -> Dict[str, Any]:
    """
    计算围长、无桥性、3-边着色和圈 4-边连通性，并给出非平凡 snark 判定。

    非平凡 snark: 围长 ≥ 5、圈 4-边连通且不可 3-边着色。
    """
    try:
        g = girth(m)
    except AcyclicGraphError:
        g = None
    bridge = has_bridge(m)
    colourable, _ = is_three_edge_colourable(m)
    cyclic4 = cyclic_connectivity_at_least(m, 4)
    report = {
        "vertices": m.num_vertices,
        "edges": m.num_edges,
        "girth": g,
        "bridgeless": bridge is None,
        "three_edge_colourable": colourable,
        "cyclically_4_edge_connected": cyclic4,
    }
    report["nontrivial_snark"] = (
        g is not None and g >= 5 and cyclic4 and bridge is None and not colourable
    )
    logger.info(f"snark 报告: |V|={m.num_vertices}, 围长={g}, 可着色={colourable}, 圈4连通={cyclic4}")
    return report
