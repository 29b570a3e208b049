"""
三正则多极子上的边赋值回溯引擎

所有约束都是顶点局部的: 每个顶点的三条边上的值必须满足某个三元关系。
子类给出 "已知两个值时第三个值是什么" 和 "三个值是否相容"，
引擎负责变量顺序、单元传播、显式栈深度优先搜索和统计。
"""

from abc import ABC, abstractmethod
from functools import lru_cache
from typing import Iterator, List, Optional, Sequence, Tuple

from ..types import SearchStats
from .core import Multipole


@lru_cache(maxsize=256)
def edge_search_order(m: Multipole) -> Tuple[int, ...]:
    """
    连通性优先的边顺序。

    按最大基数搜索放置顶点: 每次选择已放置邻居最多的顶点，
    平局时选择最近被触及的，再按编号。顶点被放置时列出其尚未列出的边。
    有悬挂边时从第一条悬挂边所连的顶点开始，否则从顶点 0 开始。
    """
    n = m.num_vertices
    if n == 0:
        return tuple(range(m.num_edges))

    start = 0
    for edge in m.edges:
        if edge.v is None:
            start = edge.u
            break

    placed = [False] * n
    weight = [0] * n
    stamp = [0] * n
    listed = [False] * m.num_edges
    order: List[int] = []
    clock = 0
    vertex = start

    for step in range(n):
        if step:
            best = None
            for candidate in range(n):
                if placed[candidate]:
                    continue
                key = (weight[candidate], stamp[candidate], -candidate)
                if best is None or key > best[0]:
                    best = (key, candidate)
            vertex = best[1]
        placed[vertex] = True
        clock += 1
        for e in m.incidence[vertex]:
            if not listed[e]:
                listed[e] = True
                order.append(e)
            for other in m.edges[e].ends():
                if other != vertex and not placed[other]:
                    weight[other] += 1
                    stamp[other] = clock

    return tuple(order)


class EdgeAssignmentSearch(ABC):
    """
    边赋值搜索基类。

    值 0 表示未赋值，因此所有合法取值都必须非零。
    """

    def __init__(
        self,
        multipole: Multipole,
        candidates: Sequence[int],
        order: Optional[Sequence[int]] = None,
        max_nodes: Optional[int] = None
    ):
        self.multipole = multipole
        self.incidence = multipole.incidence
        self.edge_vertices = tuple(edge.ends() for edge in multipole.edges)
        self.values: List[int] = [0] * multipole.num_edges
        self.trail: List[int] = []
        self.order = tuple(order) if order is not None else edge_search_order(multipole)
        self.candidates = tuple(candidates)
        self.stats = SearchStats()
        self.consistent = True
        self.max_nodes = max_nodes
        self.aborted = False

    # ------------------------------------------------------------------
    # 子类接口
    # ------------------------------------------------------------------

    @abstractmethod
    def third(self, vertex: int, a: int, va: int, b: int, vb: int, c: int) -> int:
        """已知边 a、b 的值，返回边 c 被强制的值；冲突时返回 0"""

    @abstractmethod
    def closes(self, vertex: int, a: int, va: int, b: int, vb: int, c: int, vc: int) -> bool:
        """三条边都已赋值时检查顶点约束"""

    def candidates_for(self, edge: int) -> Sequence[int]:
        return self.candidates

    # ------------------------------------------------------------------
    # 赋值与传播
    # ------------------------------------------------------------------

    def assign(self, edge: int, value: int) -> bool:
        """赋值并做单元传播；返回 False 表示冲突（调用者负责回滚）"""
        values = self.values
        trail = self.trail
        queue = [(edge, value)]
        while queue:
            e, x = queue.pop()
            current = values[e]
            if current:
                if current != x:
                    return False
                continue
            values[e] = x
            trail.append(e)
            for w in self.edge_vertices[e]:
                a, b, c = self.incidence[w]
                va, vb, vc = values[a], values[b], values[c]
                if va and vb and vc:
                    if not self.closes(w, a, va, b, vb, c, vc):
                        return False
                elif va and vb:
                    z = self.third(w, a, va, b, vb, c)
                    if not z:
                        return False
                    queue.append((c, z))
                elif va and vc:
                    z = self.third(w, a, va, c, vc, b)
                    if not z:
                        return False
                    queue.append((b, z))
                elif vb and vc:
                    z = self.third(w, b, vb, c, vc, a)
                    if not z:
                        return False
                    queue.append((a, z))
        return True

    def undo(self, mark: int) -> None:
        values = self.values
        trail = self.trail
        while len(trail) > mark:
            values[trail.pop()] = 0

    def fix(self, edge: int, value: int) -> bool:
        """在搜索开始前固定一条边的值"""
        if not self.consistent:
            return False
        mark = len(self.trail)
        if not self.assign(edge, value):
            self.undo(mark)
            self.consistent = False
        return self.consistent

    def _next_free(self, position: int) -> Optional[int]:
        order = self.order
        values = self.values
        while position < len(order):
            if not values[order[position]]:
                return position
            position += 1
        return None

    # ------------------------------------------------------------------
    # 深度优先搜索
    # ------------------------------------------------------------------

    def solutions(self, limit: Optional[int] = None) -> Iterator[Tuple[int, ...]]:
        """
        按确定顺序逐个产生完整赋值。

        变量顺序为 self.order，取值顺序为 candidates_for 给出的顺序。
        生成器可以提前关闭，此时搜索对象不再可复用。
        超过 max_nodes 时停止并设置 aborted，此时没有解不代表穷举。
        """
        if not self.consistent:
            return

        position = self._next_free(0)
        if position is None:
            self.stats.solutions += 1
            yield tuple(self.values)
            return

        found = 0
        stack = [[position, 0, len(self.trail)]]
        while stack:
            frame = stack[-1]
            position, choice, mark = frame
            self.undo(mark)
            edge = self.order[position]
            options = self.candidates_for(edge)
            if choice >= len(options):
                stack.pop()
                continue
            frame[1] = choice + 1
            if self.max_nodes is not None and self.stats.nodes >= self.max_nodes:
                self.aborted = True
                self.undo(mark)
                return
            self.stats.nodes += 1
            if not self.assign(edge, options[choice]):
                continue
            following = self._next_free(position + 1)
            if following is None:
                self.stats.solutions += 1
                found += 1
                yield tuple(self.values)
                if limit is not None and found >= limit:
                    self.undo(mark)
                    return
            else:
                stack.append([following, 0, len(self.trail)])

    def first(self) -> Optional[Tuple[int, ...]]:
        """返回第一个解，没有解时返回 None"""
        for solution in self.solutions(limit=1):
            return solution
        return None
