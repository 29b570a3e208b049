"""
小规模三正则图普查

按 BFS 标号生成连通简单三正则图: 依次处理顶点 v，把 v 剩余的度数分给
已发现但尚未处理的顶点，或分给若干个连续编号的新顶点。每个连通图都有 BFS 标号，
因此每个同构类至少生成一次；再用 WL 哈希分桶加 VF2 同构判定去重。
"""

from itertools import combinations
from typing import Dict, Iterator, List, Optional, Set, Tuple

import networkx as nx
from tqdm import tqdm

from ..config import config
from ..monitoring.logger import setup_logger
from ..multipole.core import Multipole
from ..multipole.invariants import find_bridges

logger = setup_logger(__name__)


def _bfs_labelled_cubic(n: int) -> Iterator[Tuple[Tuple[int, int], ...]]:
    """产生 n 个顶点的 BFS 标号连通简单三正则图的边列表（可能重复）"""
    adj: List[Set[int]] = [set() for _ in range(n)]
    edges: List[Tuple[int, int]] = []

    def connect(a: int, b: int) -> None:
        adj[a].add(b)
        adj[b].add(a)
        edges.append((a, b))

    def disconnect(a: int, b: int) -> None:
        adj[a].discard(b)
        adj[b].discard(a)
        edges.pop()

    def process(v: int, discovered: int) -> Iterator[Tuple[Tuple[int, int], ...]]:
        if v == n:
            yield tuple(sorted(edges))
            return
        if v >= discovered:
            return
        need = 3 - len(adj[v])
        open_vertices = [w for w in range(v + 1, discovered) if len(adj[w]) < 3 and w not in adj[v]]
        for size in range(need + 1):
            fresh = need - size
            if discovered + fresh > n:
                continue
            for chosen in combinations(open_vertices, size):
                targets = list(chosen) + list(range(discovered, discovered + fresh))
                for w in targets:
                    connect(v, w)
                yield from process(v + 1, discovered + fresh)
                for w in reversed(targets):
                    disconnect(v, w)

    if n >= 4 and n % 2 == 0:
        yield from process(0, 1)


def cubic_graphs(n: int, show_progress: bool = False) -> List[Multipole]:
    """
    n 个顶点的全部连通简单三正则图，每个同构类一个代表。

    代表按首次生成的顺序排列，因此结果是确定的。
    """
    buckets: Dict[str, List[nx.Graph]] = {}
    seen: Set[Tuple[Tuple[int, int], ...]] = set()
    representatives: List[Multipole] = []

    for edge_list in tqdm(_bfs_labelled_cubic(n), desc=f"n={n}", disable=not show_progress, leave=False):
        if edge_list in seen:
            continue
        seen.add(edge_list)
        graph = nx.Graph(edge_list)
        key = nx.weisfeiler_lehman_graph_hash(graph, iterations=3)
        bucket = buckets.setdefault(key, [])
        if any(nx.is_isomorphic(graph, other) for other in bucket):
            continue
        bucket.append(graph)
        representatives.append(Multipole.from_edge_list(n, edge_list))

    logger.debug(f"n={n}: {len(seen)} 个标号图，{len(representatives)} 个同构类")
    return representatives


def small_cubic_census(
    max_vertices: Optional[int] = None,
    bridgeless_only: bool = True,
    show_progress: bool = False
) -> List[Multipole]:
    """
    顶点数不超过 max_vertices 的连通简单（默认无桥）三正则图，在同构意义下各取一个。

    连通图个数: n=4: 1, 6: 2, 8: 5, 10: 19；其中 n=10 有一个图带桥。
    """
    max_vertices = config.search.CENSUS_MAX_VERTICES if max_vertices is None else max_vertices
    census: List[Multipole] = []
    for n in range(4, max_vertices + 1, 2):
        graphs = cubic_graphs(n, show_progress)
        if bridgeless_only:
            graphs = [g for g in graphs if not find_bridges(g)]
        census.extend(graphs)
        logger.info(f"普查 n={n}: {len(graphs)} 个图")
    return census
