"""
Petersen 偶极子与重叠加构造

基图 G 的每个顶点 v 变成两个独立的提升顶点 (v, 0)、(v, 1)，编号为 2v + j；
每条边 e = (u, v) 换成一个 (2,2)-极子 X_e（超边），输入连接器连到 u 的提升，
输出连接器连到 v 的提升。超边顶点按基图边序排在所有提升顶点之后。
"""

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from ..exceptions import HypothesisError, NotCubicError
from ..monitoring.logger import setup_logger
from ..multipole.builders import petersen
from ..multipole.core import Dipole, Edge, Multipole, canonical_dipole, compose_all, remove_vertices
from ..multipole.invariants import girth
from ..multipole.isomorphism import are_isomorphic
from ..transitions.analysis import is_heavy, q_dipole_from

logger = setup_logger(__name__)

# 在 petersen() 的编号下交于路 0-1-2 的两个 5-圈
PETERSEN_Q_CYCLES: Tuple[Tuple[int, ...], Tuple[int, ...]] = ((0, 1, 2, 3, 4), (0, 1, 2, 7, 5))

CANONICAL_ATTACHMENT: Tuple[int, int, int, int] = (0, 1, 0, 1)


# ============================================================================
# Petersen 偶极子
# ============================================================================

@lru_cache(maxsize=1)
def build_d_ps() -> Dipole:
    """
    删除 Petersen 图的两个相邻顶点 0、1 得到的 8 顶点 (2,2)-极子。

    原来关联同一个被删顶点的两条悬挂边属于同一个连接器: 顶点 0 的为输入，顶点 1 的为输出。
    """
    m = remove_vertices(petersen(), [0, 1])
    return canonical_dipole(m, ["x0:0", "x0:1"], ["x1:0", "x1:1"])


def build_q_ps(cycles: Optional[Sequence[Sequence[int]]] = None) -> Dipole:
    """切断 Petersen 图中距离为 2 的两条边得到的 10 顶点 Q-偶极子"""
    c1, c2 = cycles if cycles is not None else PETERSEN_Q_CYCLES
    return q_dipole_from(petersen(), c1, c2)


@lru_cache(maxsize=1)
def basic_superedge() -> Dipole:
    """D_Ps ∘ Q_Ps ∘ D_Ps，26 个顶点"""
    d = build_d_ps()
    return compose_all([d, build_q_ps(), d])


# ============================================================================
# 叠加方案
# ============================================================================

@dataclass(frozen=True)
class SuperpositionPlan:
    """
    重叠加方案。

    superedges[i] 替换基图的第 i 条边；attachments[i] = (in0, in1, out0, out1) 给出
    每条悬挂边连到哪个提升 (0 或 1)，同一连接器的两条悬挂边必须连到不同的提升。
    names 只用于报告和序列化。
    """
    base: Multipole
    superedges: Tuple[Dipole, ...]
    names: Tuple[str, ...]
    attachments: Tuple[Tuple[int, int, int, int], ...]

    def __post_init__(self):
        for attr in ("superedges", "names", "attachments"):
            object.__setattr__(self, attr, tuple(getattr(self, attr)))
        object.__setattr__(self, "attachments", tuple(tuple(a) for a in self.attachments))
        self.validate()

    def validate(self) -> None:
        """
        引发:
            NotCubicError: 基图带有悬挂边
            HypothesisError: 方案长度、连接器大小或连接表不合法
        """
        if not self.base.is_graph:
            raise NotCubicError("重叠加", self.base.dangling_count)
        m = self.base.num_edges
        if not (len(self.superedges) == len(self.names) == len(self.attachments) == m):
            raise HypothesisError("重叠加", f"方案长度与基图边数 {m} 不一致")
        for index, (dipole, attachment) in enumerate(zip(self.superedges, self.attachments)):
            if dipole.arity != 2:
                raise HypothesisError("重叠加", f"超边 {index} 不是 (2,2)-极子", {"edge": index})
            if len(attachment) != 4 or any(j not in (0, 1) for j in attachment):
                raise HypothesisError("重叠加", f"超边 {index} 的连接表无效: {attachment}", {"edge": index})
            if attachment[0] == attachment[1] or attachment[2] == attachment[3]:
                raise HypothesisError(
                    "重叠加", f"超边 {index} 的同一连接器必须连到不同的提升顶点", {"edge": index}
                )

    @property
    def num_base_vertices(self) -> int:
        return self.base.num_vertices

    @property
    def num_base_edges(self) -> int:
        return self.base.num_edges

    def expected_vertices(self) -> int:
        """|V(G̃)| = 2n + Σ|V(X_e)|"""
        return 2 * self.base.num_vertices + sum(x.num_vertices for x in self.superedges)

    def distinct_superedges(self) -> Dict[str, Dipole]:
        """按名称去重后的超边（名称顺序为首次出现的顺序）"""
        result: Dict[str, Dipole] = {}
        for name, dipole in zip(self.names, self.superedges):
            result.setdefault(name, dipole)
        return result


def basic_plan(base: Multipole) -> SuperpositionPlan:
    """所有超边都是基本超边、连接表为规范连接的方案"""
    m = base.num_edges
    return SuperpositionPlan(
        base=base,
        superedges=(basic_superedge(),) * m,
        names=("basic",) * m,
        attachments=(CANONICAL_ATTACHMENT,) * m,
    )


def lift(vertex: int, j: int) -> int:
    return 2 * vertex + j


@dataclass(frozen=True)
class Superposition:
    """
    重叠加的结果。

    provenance[i][k] 是第 i 条超边的第 k 条边在 G̃ 中的边索引；
    offsets[i] 是第 i 条超边的顶点 0 在 G̃ 中的编号。
    """
    graph: Multipole
    plan: SuperpositionPlan
    provenance: Tuple[Tuple[int, ...], ...]
    offsets: Tuple[int, ...]


def heavy_superposition(plan: SuperpositionPlan, check_heavy: bool = True, threads: int = 1) -> Superposition:
    """
    构造重叠加 G̃。

    超边的悬挂边原位变成连接提升顶点与超边顶点的边，方向为提升 → 超边，
    与悬挂边 "自由端 → 顶点" 的参考方向一致。

    参数:
        plan: 叠加方案
        check_heavy: 是否先检查每条不同的超边都是重偶极子
        threads: 重性检查的并行进程数

    引发:
        HypothesisError: 某条超边不是重偶极子
    """
    if check_heavy:
        for name, dipole in plan.distinct_superedges().items():
            if not is_heavy(dipole, threads=threads):
                raise HypothesisError("重叠加", f"超边 {name} 不是重偶极子", {"superedge": name})

    base = plan.base
    offset = 2 * base.num_vertices
    edges: List[Edge] = []
    provenance: List[Tuple[int, ...]] = []
    offsets: List[int] = []

    for index, base_edge in enumerate(base.edges):
        dipole = plan.superedges[index]
        in0, in1, out0, out1 = plan.attachments[index]
        targets = {
            dipole.inputs[0]: lift(base_edge.u, in0),
            dipole.inputs[1]: lift(base_edge.u, in1),
            dipole.outputs[0]: lift(base_edge.v, out0),
            dipole.outputs[1]: lift(base_edge.v, out1),
        }
        local = []
        for edge in dipole.base.edges:
            local.append(len(edges))
            if edge.v is None:
                edges.append(Edge(targets[edge.label], edge.u + offset))
            else:
                edges.append(edge.shifted(offset))
        provenance.append(tuple(local))
        offsets.append(offset)
        offset += dipole.num_vertices

    graph = Multipole(offset, tuple(edges))
    logger.info(f"重叠加: 基图 {base.num_vertices} 个顶点，结果 {graph.num_vertices} 个顶点、{graph.num_edges} 条边")
    return Superposition(graph, plan, tuple(provenance), tuple(offsets))


def realizes_plan(graph: Multipole, plan: SuperpositionPlan) -> bool:
    """graph 是否与方案的重叠加同构"""
    expected = heavy_superposition(plan, check_heavy=False).graph
    if (graph.num_vertices, graph.num_edges) != (expected.num_vertices, expected.num_edges):
        return False
    if graph.edges == expected.edges:
        return True
    if girth(graph) != girth(expected):
        return False
    return are_isomorphic(graph, expected)
