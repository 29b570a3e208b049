"""
多极子和偶极子的数据模型与代数运算

多极子是允许悬挂边的三正则多重图。顶点是稠密整数 0..n-1，
边的身份由其在边列表中的位置决定，因此平行边可以区分。
悬挂边的自由端带有形如 "<连接器>:<序号>" 的标签。
"""

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import networkx as nx

from ..exceptions import (
    ConnectorMismatchError,
    InvalidMultipoleError,
    LoopError,
    NotCubicError,
    UnknownDanglingError,
    UnknownEdgeError,
)
from ..types import SeverPolicy

LABEL_PATTERN = re.compile(r"^[^\s:]+:\d+$")


def make_label(connector: str, index: int) -> str:
    """构造悬挂边标签"""
    return f"{connector}:{index}"


def split_label(label: str) -> Tuple[str, int]:
    """把标签拆分为 (连接器, 序号)"""
    connector, _, index = label.rpartition(":")
    return connector, int(index)


# ============================================================================
# 数据类型
# ============================================================================

@dataclass(frozen=True)
class Edge:
    """
    一条边。

    内部边连接 u 和 v，参考方向为 u → v。悬挂边的 v 为 None，
    label 是自由端标签，参考方向为自由端 → u。
    """
    u: int
    v: Optional[int] = None
    label: Optional[str] = None

    @property
    def is_dangling(self) -> bool:
        return self.v is None

    def ends(self) -> Tuple[int, ...]:
        """返回连接的顶点"""
        return (self.u,) if self.v is None else (self.u, self.v)

    def shifted(self, offset: int) -> "Edge":
        return Edge(self.u + offset, None if self.v is None else self.v + offset, self.label)


@dataclass(frozen=True)
class Multipole:
    """三正则多极子；没有悬挂边时就是一个图"""
    num_vertices: int
    edges: Tuple[Edge, ...]

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(self.edges))
        self._validate()

    def _validate(self) -> None:
        if self.num_vertices < 0:
            raise InvalidMultipoleError(f"顶点数为负: {self.num_vertices}")

        degree = [0] * self.num_vertices
        labels = set()
        for index, edge in enumerate(self.edges):
            if not 0 <= edge.u < self.num_vertices:
                raise InvalidMultipoleError(f"边 {index} 的端点 {edge.u} 不存在", edge=index)
            if edge.v is None:
                if edge.label is None or not LABEL_PATTERN.match(edge.label):
                    raise InvalidMultipoleError(f"边 {index} 的悬挂标签无效: {edge.label!r}", edge=index)
                if edge.label in labels:
                    raise InvalidMultipoleError(f"重复的悬挂标签: {edge.label}", edge=index)
                labels.add(edge.label)
                degree[edge.u] += 1
            else:
                if not 0 <= edge.v < self.num_vertices:
                    raise InvalidMultipoleError(f"边 {index} 的端点 {edge.v} 不存在", edge=index)
                if edge.u == edge.v:
                    raise LoopError(edge.u)
                if edge.label is not None:
                    raise InvalidMultipoleError(f"内部边 {index} 不能带标签", edge=index)
                degree[edge.u] += 1
                degree[edge.v] += 1

        for vertex, d in enumerate(degree):
            if d != 3:
                raise InvalidMultipoleError(f"顶点 {vertex} 有 {d} 个边端", vertex=vertex)

    # ------------------------------------------------------------------
    # 派生结构
    # ------------------------------------------------------------------

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @cached_property
    def incidence(self) -> Tuple[Tuple[int, int, int], ...]:
        """每个顶点关联的三条边的索引"""
        lists: List[List[int]] = [[] for _ in range(self.num_vertices)]
        for index, edge in enumerate(self.edges):
            for vertex in edge.ends():
                lists[vertex].append(index)
        return tuple(tuple(items) for items in lists)

    @cached_property
    def dangling_labels(self) -> Tuple[str, ...]:
        """按边序排列的悬挂边标签"""
        return tuple(edge.label for edge in self.edges if edge.v is None)

    @cached_property
    def _label_index(self) -> Dict[str, int]:
        return {edge.label: i for i, edge in enumerate(self.edges) if edge.v is None}

    @property
    def dangling_count(self) -> int:
        return len(self.dangling_labels)

    @property
    def is_graph(self) -> bool:
        return self.dangling_count == 0

    def dangling_edge(self, label: str) -> int:
        """返回悬挂边标签对应的边索引"""
        try:
            return self._label_index[label]
        except KeyError:
            raise UnknownDanglingError(label, list(self.dangling_labels)) from None

    def internal_edges(self) -> List[int]:
        return [i for i, edge in enumerate(self.edges) if edge.v is not None]

    def to_networkx(self) -> nx.MultiGraph:
        """内部边构成的 networkx 多重图，边键为边索引"""
        graph = nx.MultiGraph()
        graph.add_nodes_from(range(self.num_vertices))
        for index, edge in enumerate(self.edges):
            if edge.v is not None:
                graph.add_edge(edge.u, edge.v, key=index)
        return graph

    @classmethod
    def from_edge_list(cls, num_vertices: int, pairs: Iterable[Tuple[int, int]]) -> "Multipole":
        """由顶点对列表构造图"""
        return cls(num_vertices, tuple(Edge(u, v) for u, v in pairs))


@dataclass(frozen=True)
class Dipole:
    """带有有序输入、输出连接器的多极子"""
    base: Multipole
    inputs: Tuple[str, ...]
    outputs: Tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "inputs", tuple(self.inputs))
        object.__setattr__(self, "outputs", tuple(self.outputs))
        if len(self.inputs) != len(self.outputs):
            raise ConnectorMismatchError(len(self.inputs), len(self.outputs), "输入与输出连接器")
        declared = list(self.inputs) + list(self.outputs)
        if len(set(declared)) != len(declared):
            raise InvalidMultipoleError("输入和输出连接器必须不相交")
        if set(declared) != set(self.base.dangling_labels):
            missing = sorted(set(self.base.dangling_labels) - set(declared))
            unknown = sorted(set(declared) - set(self.base.dangling_labels))
            raise InvalidMultipoleError(f"连接器未覆盖全部悬挂边 (缺少 {missing}，未知 {unknown})")

    @property
    def num_vertices(self) -> int:
        return self.base.num_vertices

    @property
    def arity(self) -> int:
        return len(self.inputs)

    @property
    def boundary_labels(self) -> Tuple[str, ...]:
        """输入在前、输出在后的悬挂边标签"""
        return self.inputs + self.outputs

    def input_edges(self) -> Tuple[int, ...]:
        return tuple(self.base.dangling_edge(label) for label in self.inputs)

    def output_edges(self) -> Tuple[int, ...]:
        return tuple(self.base.dangling_edge(label) for label in self.outputs)


# ============================================================================
# 运算
# ============================================================================

def junction(m: Multipole, s: str, t: str) -> Multipole:
    """
    把悬挂边 s 和 t 合并为一条连接它们所连顶点的边。

    新边占据 s 的位置，方向为 s 的顶点 → t 的顶点；t 的位置被删除。

    引发:
        UnknownDanglingError: 标签不存在
        InvalidMultipoleError: s 与 t 相同
        LoopError: 两条悬挂边连接同一个顶点
    """
    if s == t:
        raise InvalidMultipoleError(f"不能把悬挂边 {s} 与自身合并")
    es = m.dangling_edge(s)
    et = m.dangling_edge(t)
    u, w = m.edges[es].u, m.edges[et].u
    if u == w:
        raise LoopError(u, "junction")

    edges = []
    for index, edge in enumerate(m.edges):
        if index == es:
            edges.append(Edge(u, w))
        elif index != et:
            edges.append(edge)
    return Multipole(m.num_vertices, tuple(edges))


def relabel_dangling(m: Multipole, mapping: Mapping[str, str]) -> Multipole:
    """按映射重命名悬挂边标签，未出现的标签保持不变"""
    for label in mapping:
        m.dangling_edge(label)
    edges = tuple(
        Edge(edge.u, None, mapping.get(edge.label, edge.label)) if edge.v is None else edge
        for edge in m.edges
    )
    return Multipole(m.num_vertices, edges)


def disjoint_union(a: Multipole, b: Multipole) -> Multipole:
    """不交并；b 的顶点编号整体后移 |V(a)|，悬挂标签必须不相交"""
    overlap = set(a.dangling_labels) & set(b.dangling_labels)
    if overlap:
        raise InvalidMultipoleError(f"悬挂标签冲突: {sorted(overlap)}")
    shifted = tuple(edge.shifted(a.num_vertices) for edge in b.edges)
    return Multipole(a.num_vertices + b.num_vertices, a.edges + shifted)


def canonical_dipole(m: Multipole, inputs: Sequence[str], outputs: Sequence[str]) -> Dipole:
    """把给定的输入、输出标签重命名为 in:i 和 out:i"""
    mapping = {label: make_label("in", i) for i, label in enumerate(inputs)}
    mapping.update({label: make_label("out", i) for i, label in enumerate(outputs)})
    base = relabel_dangling(m, mapping)
    return Dipole(
        base,
        tuple(make_label("in", i) for i in range(len(inputs))),
        tuple(make_label("out", i) for i in range(len(outputs))),
    )


def compose(d1: Dipole, d2: Dipole) -> Dipole:
    """
    偶极子复合 d1 ∘ d2: d1 的第 i 个输出与 d2 的第 i 个输入合并。

    结果的输入是 d1 的输入，输出是 d2 的输出，标签规范化为 in:i / out:i。

    引发:
        ConnectorMismatchError: 连接器大小不匹配
    """
    if len(d1.outputs) != len(d2.inputs):
        raise ConnectorMismatchError(len(d1.outputs), len(d2.inputs), "compose")

    offset = d1.base.num_vertices
    edges: List[Optional[Edge]] = list(d1.base.edges)
    edges.extend(edge.shifted(offset) for edge in d2.base.edges)
    shift = d1.base.num_edges

    for out_label, in_label in zip(d1.outputs, d2.inputs):
        pos_a = d1.base.dangling_edge(out_label)
        pos_b = shift + d2.base.dangling_edge(in_label)
        edges[pos_a] = Edge(edges[pos_a].u, edges[pos_b].u)
        edges[pos_b] = None

    mapping = {label: make_label("in", i) for i, label in enumerate(d1.inputs)}
    out_mapping = {label: make_label("out", i) for i, label in enumerate(d2.outputs)}
    result = []
    for index, edge in enumerate(edges):
        if edge is None:
            continue
        if edge.v is None:
            table = mapping if index < shift else out_mapping
            edge = Edge(edge.u, None, table[edge.label])
        result.append(edge)

    base = Multipole(d1.base.num_vertices + d2.base.num_vertices, tuple(result))
    return Dipole(
        base,
        tuple(make_label("in", i) for i in range(len(d1.inputs))),
        tuple(make_label("out", i) for i in range(len(d2.outputs))),
    )


def compose_all(dipoles: Sequence[Dipole]) -> Dipole:
    """从左到右依次复合"""
    if not dipoles:
        raise InvalidMultipoleError("复合序列为空")
    result = dipoles[0]
    for dipole in dipoles[1:]:
        result = compose(result, dipole)
    return result


def sever(
    g: Multipole,
    cuts: Sequence[int],
    policy: SeverPolicy = SeverPolicy.SAME_EDGE,
    assignment: Optional[Sequence[Tuple[str, str]]] = None
) -> Dipole:
    """
    切断边，每条被切断的边变成两条悬挂边。

    参数:
        g: 没有悬挂边的图
        cuts: 要切断的边索引（有序）
        policy: same-edge 策略要求两条边，第 k 条边的两半构成第 k 个连接器；
                split 策略中每条边一半进入输入、一半进入输出；
                explicit 策略由 assignment 给出每条边 (u 半边, v 半边) 所属的连接器 "in"/"out"
        assignment: explicit 策略的分配表，与 cuts 对齐

    返回:
        偶极子。u 半边占据原边的位置，v 半边紧随其后。

    引发:
        UnknownEdgeError: 边不存在、重复或已经是悬挂边
        ConnectorMismatchError: 连接器大小不一致
    """
    if not g.is_graph:
        raise NotCubicError("sever", g.dangling_count)

    seen = set()
    for edge_index in cuts:
        if not 0 <= edge_index < g.num_edges:
            raise UnknownEdgeError(edge_index)
        if edge_index in seen:
            raise UnknownEdgeError(edge_index, "重复出现")
        seen.add(edge_index)

    halves: Dict[int, Tuple[str, str]] = {}
    if policy == SeverPolicy.SAME_EDGE:
        if len(cuts) != 2:
            raise ConnectorMismatchError(2, len(cuts), "same-edge 策略需要两条边")
        for k, connector in zip(cuts, ("in", "out")):
            halves[k] = (make_label(connector, 0), make_label(connector, 1))
    elif policy == SeverPolicy.SPLIT:
        for position, k in enumerate(cuts):
            halves[k] = (make_label("in", position), make_label("out", position))
    else:
        if assignment is None or len(assignment) != len(cuts):
            raise ConnectorMismatchError(len(cuts), 0 if assignment is None else len(assignment), "explicit 分配表")
        counters = {"in": 0, "out": 0}
        for k, pair in zip(cuts, assignment):
            labels = []
            for connector in pair:
                if connector not in counters:
                    raise InvalidMultipoleError(f"未知的连接器: {connector}")
                labels.append(make_label(connector, counters[connector]))
                counters[connector] += 1
            halves[k] = (labels[0], labels[1])
        if counters["in"] != counters["out"]:
            raise ConnectorMismatchError(counters["in"], counters["out"], "explicit 分配表")

    edges = []
    for index, edge in enumerate(g.edges):
        if index in halves:
            label_u, label_v = halves[index]
            edges.append(Edge(edge.u, None, label_u))
            edges.append(Edge(edge.v, None, label_v))
        else:
            edges.append(edge)

    base = Multipole(g.num_vertices, tuple(edges))
    inputs = sorted((l for l in base.dangling_labels if split_label(l)[0] == "in"), key=lambda l: split_label(l)[1])
    outputs = sorted((l for l in base.dangling_labels if split_label(l)[0] == "out"), key=lambda l: split_label(l)[1])
    return Dipole(base, tuple(inputs), tuple(outputs))


def remove_vertices(g: Multipole, vs: Iterable[int]) -> Multipole:
    """
    删除顶点集合。

    两端都被删除的边消失；恰有一端被删除的边变成悬挂边，
    标签为 x<被删顶点>:<k>，k 按边序在该被删顶点上计数。
    保留顶点按原顺序重新编号。删除空集返回原多极子。
    """
    removed = set(vs)
    for vertex in removed:
        if not 0 <= vertex < g.num_vertices:
            raise InvalidMultipoleError(f"顶点 {vertex} 不存在", vertex=vertex)
    if not removed:
        return g

    mapping = {}
    for vertex in range(g.num_vertices):
        if vertex not in removed:
            mapping[vertex] = len(mapping)

    counters = {vertex: 0 for vertex in removed}
    edges = []
    for edge in g.edges:
        if edge.v is None:
            if edge.u not in removed:
                edges.append(Edge(mapping[edge.u], None, edge.label))
            continue
        u_gone, v_gone = edge.u in removed, edge.v in removed
        if u_gone and v_gone:
            continue
        if u_gone or v_gone:
            gone, kept = (edge.u, edge.v) if u_gone else (edge.v, edge.u)
            edges.append(Edge(mapping[kept], None, make_label(f"x{gone}", counters[gone])))
            counters[gone] += 1
        else:
            edges.append(Edge(mapping[edge.u], mapping[edge.v]))

    return Multipole(len(mapping), tuple(edges))
