"""
(2,2)-极子的转移分析

所有判定都建立在 boundary_realizations 之上: 一个偶极子的可实现边界元组
(in0, in1, out0, out1) 决定了点对级转移、形状级转移和重性。
"""

import random
from dataclasses import dataclass, field
from typing import Any, Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from tqdm import tqdm

from ..config import config
from ..exceptions import ConnectorMismatchError, HypothesisError, NotCubicError
from ..flows.tetra import boundary_realizations, find_tetra_flow
from ..geometry.tetrahedron import Tetrahedron, shape_of
from ..monitoring.logger import setup_logger
from ..multipole.core import (
    Dipole,
    Edge,
    Multipole,
    canonical_dipole,
    compose,
    compose_all,
    make_label,
    remove_vertices,
    sever,
)
from ..multipole.generators import random_dipoles
from ..types import BoundaryTuple, PairTransition, SearchStats, SeverPolicy, Shape, ShapeRelation
from ..utils import parallel_map
from .relations import A, compose_relations, format_relation

logger = setup_logger(__name__)


@dataclass
class TransitionResult:
    """偶极子的转移关系，包含点对级和形状级两层"""
    tuples: Tuple[BoundaryTuple, ...]
    pairs: FrozenSet[PairTransition]
    shapes: ShapeRelation
    stats: SearchStats = field(default_factory=SearchStats)

    def to_dict(self, include_pairs: bool = True) -> Dict[str, Any]:
        payload: Dict[str, Any] = {
            "shapes": format_relation(self.shapes),
            "pair_count": len(self.pairs),
            "tuple_count": len(self.tuples),
            "statistics": self.stats.to_dict(),
        }
        if include_pairs:
            payload["pairs"] = [list(p) + list(q) for p, q in sorted(self.pairs)]
        return payload


def _require_22(x: Dipole) -> None:
    if x.arity != 2:
        raise ConnectorMismatchError(2, x.arity, "需要 (2,2)-极子")


def realizable_tuples(
    x: Dipole,
    T: Optional[Tetrahedron] = None,
    threads: int = 1,
    stats: Optional[SearchStats] = None
) -> Tuple[BoundaryTuple, ...]:
    """可实现的有序边界元组 (in0, in1, out0, out1)"""
    _require_22(x)
    return boundary_realizations(x.base, T or Tetrahedron(), x.boundary_labels, threads, stats)


def _pair(a: int, b: int) -> Tuple[int, int]:
    return (a, b) if a <= b else (b, a)


def transition_relation(x: Dipole, T: Optional[Tetrahedron] = None, threads: int = 1) -> TransitionResult:
    """
    计算点对级转移（55×55 网格中可实现的格子）和形状级转移关系。

    引发:
        ConnectorMismatchError: 不是 (2,2)-极子
    """
    T = T or Tetrahedron()
    stats = SearchStats()
    tuples = realizable_tuples(x, T, threads, stats)
    pairs = frozenset((_pair(a, b), _pair(c, d)) for a, b, c, d in tuples)
    shapes = frozenset((shape_of(T, *p), shape_of(T, *q)) for p, q in pairs)
    logger.debug(f"转移关系: {len(pairs)} 个点对级转移，形状级 {format_relation(shapes)}")
    return TransitionResult(tuples, pairs, shapes, stats)


def is_decollineator(x: Dipole, T: Optional[Tetrahedron] = None, threads: int = 1) -> bool:
    """没有两侧都共线（ls 或 hl）的点对级转移"""
    T = T or Tetrahedron()
    for a, b, c, d in realizable_tuples(x, T, threads):
        if shape_of(T, a, b).collinear and shape_of(T, c, d).collinear:
            return False
    return True


def is_l_dipole(x: Dipole, L: Iterable, T: Optional[Tetrahedron] = None, threads: int = 1) -> bool:
    """T(x) ⊆ L"""
    allowed = frozenset(L)
    return transition_relation(x, T, threads).shapes <= allowed


def is_deangulator(x: Dipole, T: Optional[Tetrahedron] = None, threads: int = 1) -> bool:
    """没有 ang→ang 转移；没有任何 T-流时空真成立"""
    return (Shape.ANG, Shape.ANG) not in transition_relation(x, T, threads).shapes


def is_heavy(x: Dipole, T: Optional[Tetrahedron] = None, threads: int = 1) -> bool:
    """每个 T-流都至少有两条悬挂边取中点值；没有 T-流时空真成立"""
    T = T or Tetrahedron()
    for values in realizable_tuples(x, T, threads):
        if sum(1 for value in values if not T.is_corner(value)) < 2:
            return False
    return True


def admissibility_check(x: Dipole, T: Optional[Tetrahedron] = None, threads: int = 1) -> bool:
    """T(x) ⊆ A；对每个偶极子都应成立"""
    return is_l_dipole(x, A, T, threads)


# ============================================================================
# 构造
# ============================================================================

def decollineator_to_graph(x: Dipole) -> Multipole:
    """
    添加两个相邻的新顶点 u = n、v = n + 1: u 连接两条输入悬挂边，v 连接两条输出悬挂边。

    悬挂边原位替换为内部边，u、v 之间的边追加在末尾。
    """
    _require_22(x)
    n = x.num_vertices
    inputs = set(x.inputs)
    edges: List[Edge] = []
    for edge in x.base.edges:
        if edge.v is None:
            edges.append(Edge(n if edge.label in inputs else n + 1, edge.u))
        else:
            edges.append(edge)
    edges.append(Edge(n, n + 1))
    return Multipole(n + 2, tuple(edges))


def _cycle_edges(g: Multipole, cycle: Sequence[int], name: str) -> List[int]:
    if len(cycle) != 5 or len(set(cycle)) != 5:
        raise HypothesisError("Q-偶极子", f"{name} 不是 5-圈", {"cycle": list(cycle)})
    edges = []
    for i in range(5):
        a, b = cycle[i], cycle[(i + 1) % 5]
        if not (0 <= a < g.num_vertices and 0 <= b < g.num_vertices):
            raise HypothesisError("Q-偶极子", f"{name} 含有不存在的顶点", {"cycle": list(cycle)})
        between = [e for e in g.incidence[a] if g.edges[e].v is not None and set(g.edges[e].ends()) == {a, b}]
        if not between:
            raise HypothesisError("Q-偶极子", f"{name} 中的顶点 {a} 与 {b} 不相邻", {"cycle": list(cycle)})
        edges.append(min(between))
    return edges


def q_dipole_from(g: Multipole, c1: Sequence[int], c2: Sequence[int]) -> Dipole:
    """
    由两个交为 2-路的 5-圈构造 Q-偶极子。

    切断 C1 ∪ C2 中不与公共路相关联的两条边: C1 的那条成为输入连接器，C2 的那条成为输出连接器。
    调用者负责保证 π(g) ≥ 5。

    引发:
        HypothesisError: 圈长、相邻性或交集形状不满足要求
    """
    if not g.is_graph:
        raise NotCubicError("Q-偶极子", g.dangling_count)
    e1 = _cycle_edges(g, c1, "C1")
    e2 = _cycle_edges(g, c2, "C2")
    shared = set(e1) & set(e2)
    shared_vertices = set()
    for e in shared:
        shared_vertices.update(g.edges[e].ends())
    if len(shared) != 2 or len(shared_vertices) != 3:
        raise HypothesisError("Q-偶极子", "两个圈的交不是长度为 2 的路", {"shared_edges": sorted(shared)})

    def far(edges: List[int]) -> List[int]:
        return [e for e in edges if e not in shared and not set(g.edges[e].ends()) & shared_vertices]

    f1, f2 = far(e1), far(e2)
    if len(f1) != 1 or len(f2) != 1 or f1[0] == f2[0]:
        raise HypothesisError("Q-偶极子", "无法确定要切断的两条边", {"candidates": [f1, f2]})
    logger.debug(f"Q-偶极子: 切断边 {f1[0]} 和 {f2[0]}")
    return sever(g, [f1[0], f2[0]], SeverPolicy.SAME_EDGE)


def harvest_decollineators(
    graphs: Iterable[Multipole],
    T: Optional[Tetrahedron] = None,
    limit: Optional[int] = None,
    seed: Optional[int] = None,
    threads: int = 1,
) -> List[Dipole]:
    """
    从没有 T-流的图中收集去共线子。

    对每条连接 u、v 的内部边删除 u 和 v: u 的两条悬挂边成为输入连接器，v 的成为输出连接器。
    闭包 decollineator_to_graph 与原图同构，因此 π ≥ 5 时结果都是去共线子；
    有 T-流的图被跳过，u、v 之间有重边时该边被跳过。

    参数:
        graphs: 立方图
        T: 四面体，默认标准四面体
        limit: 每个图最多抽取的边数，None 表示全部
        seed: 抽样种子，默认 config.search.SEED
        threads: 并行进程数

    返回:
        去共线子列表，按图和边序排列

    引发:
        NotCubicError: 输入含悬挂边
    """
    T = T or Tetrahedron()
    rng = random.Random(config.search.SEED if seed is None else seed)
    harvested: List[Dipole] = []
    for index, g in enumerate(graphs):
        if not g.is_graph:
            raise NotCubicError("收集去共线子", g.dangling_count)
        flow, _ = find_tetra_flow(g, T)
        if flow is not None:
            logger.debug(f"图 {index} 有 T-流，跳过")
            continue
        candidates = g.internal_edges()
        if limit is not None and len(candidates) > limit:
            candidates = sorted(rng.sample(candidates, limit))
        for e in candidates:
            u, v = g.edges[e].ends()
            if sum(1 for k in g.incidence[u] if set(g.edges[k].ends()) == {u, v}) > 1:
                continue
            x = canonical_dipole(
                remove_vertices(g, [u, v]),
                [make_label(f"x{u}", 0), make_label(f"x{u}", 1)],
                [make_label(f"x{v}", 0), make_label(f"x{v}", 1)],
            )
            if is_decollineator(x, T, threads):
                harvested.append(x)
    logger.info(f"收集到 {len(harvested)} 个去共线子")
    return harvested


# ============================================================================
# 复合与闭包
# ============================================================================

def composition_report(x1: Dipole, x2: Dipole, T: Optional[Tetrahedron] = None, threads: int = 1) -> Dict[str, Any]:
    """
    比较 X1∘X2 的转移与两侧转移的连接。

    有序边界元组层面的连接是精确的；形状层面只保证 T(X1∘X2) ⊆ T(X1)∘T(X2)，等号只报告不断言。
    """
    T = T or Tetrahedron()
    r1 = transition_relation(x1, T, threads)
    r2 = transition_relation(x2, T, threads)
    rc = transition_relation(compose(x1, x2), T, threads)

    by_input: Dict[Tuple[int, int], List[Tuple[int, int]]] = {}
    for a, b, c, d in r2.tuples:
        by_input.setdefault((a, b), []).append((c, d))
    joined = frozenset(
        (a, b) + out for a, b, c, d in r1.tuples for out in by_input.get((c, d), ())
    )
    composed = compose_relations(r1.shapes, r2.shapes)
    return {
        "tuple_join_exact": joined == frozenset(rc.tuples),
        "shape_subset": rc.shapes <= composed,
        "shape_equal": rc.shapes == composed,
        "composed": format_relation(composed),
        "actual": format_relation(rc.shapes),
    }


def closure_checks(d1: Dipole, u: Dipole, d2: Dipole, T: Optional[Tetrahedron] = None, threads: int = 1) -> Dict[str, bool]:
    """D1∘U∘D2 是去共线子，U∘D1∘U 是去角子"""
    return {
        "decollineator": is_decollineator(compose_all([d1, u, d2]), T, threads),
        "deangulator": is_deangulator(compose_all([u, d1, u]), T, threads),
    }


def heaviness_equivalence(x: Dipole, T: Optional[Tetrahedron] = None, threads: int = 1) -> Dict[str, Any]:
    """
    比较去共线子判定与闭包图上直接的 T-流搜索。

    x 是去共线子当且仅当 decollineator_to_graph(x) 没有 T-流（即 π ≥ 5）。
    """
    T = T or Tetrahedron()
    predicate = is_decollineator(x, T, threads)
    flow, stats = find_tetra_flow(decollineator_to_graph(x), T)
    direct = flow is None
    if predicate != direct:
        logger.warning(f"去共线子判定 ({predicate}) 与直接搜索 ({direct}) 不一致")
    return {
        "decollineator": predicate,
        "closure_pi_at_least_5": direct,
        "agrees": predicate == direct,
        "statistics": stats.to_dict(),
    }


# ============================================================================
# 随机性质测试
# ============================================================================

def _suite_item(x: Dipole) -> Tuple[List[str], bool, bool]:
    result = transition_relation(x, Tetrahedron(), threads=1)
    return format_relation(result.shapes), result.shapes <= A, is_decollineator(x)


def random_admissibility_suite(
    count: Optional[int] = None,
    seed: Optional[int] = None,
    max_vertices: Optional[int] = None,
    threads: int = 1,
    show_progress: bool = False
) -> Dict[str, Any]:
    """
    对可复现的随机 (2,2)-极子检查 T(X) ⊆ A。

    返回:
        包含样本数、违反者下标、观察到的形状转移并集和去共线子个数的报告
    """
    count = config.search.RANDOM_DIPOLE_COUNT if count is None else count
    seed = config.search.SEED if seed is None else seed
    dipoles = random_dipoles(count, seed, max_vertices)
    results: List[Tuple[List[str], bool, bool]] = []
    batch = max(1, threads) * 8
    with tqdm(total=len(dipoles), desc="可容许性", disable=not show_progress) as progress:
        for start in range(0, len(dipoles), batch):
            chunk = dipoles[start:start + batch]
            results.extend(parallel_map(_suite_item, chunk, threads))
            progress.update(len(chunk))

    violations = [index for index, (_, ok, _) in enumerate(results) if not ok]
    observed = sorted({token for tokens, _, _ in results for token in tokens})
    decollineators = sum(1 for _, _, flag in results if flag)
    logger.info(f"随机可容许性测试: {count} 个偶极子，{len(violations)} 个违反")
    return {
        "count": count,
        "seed": seed,
        "violations": violations,
        "observed": observed,
        "decollineators": decollineators,
        "passed": not violations,
    }
