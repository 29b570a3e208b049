"""
完美匹配枚举、完美匹配指数和覆盖与 T-流之间的转换

完美匹配指数 π(G) 是并集为 E(G) 的完美匹配的最少个数。
"""

from dataclasses import dataclass, field
from itertools import product
from typing import Any, Dict, FrozenSet, List, Optional, Sequence, Tuple

from ..config import config
from ..exceptions import BridgeError, InvalidCoverError, InvalidFlowError, NotCubicError
from ..flows.tetra import count_tetra_flows, find_tetra_flow, is_valid_tetra_flow
from ..geometry.tetrahedron import Tetrahedron, cover_coordinates, point_from_cover_coordinates
from ..monitoring.logger import setup_logger
from ..multipole.core import Multipole
from ..multipole.invariants import find_bridges, three_edge_colouring
from ..types import CoverCertificate, PmiStrategy, SearchStats, Verdict

logger = setup_logger(__name__)


# ============================================================================
# 完美匹配枚举
# ============================================================================

def enumerate_perfect_matchings(g: Multipole) -> List[FrozenSet[int]]:
    """
    枚举全部完美匹配，每个恰好一次。

    每一步选取编号最小的未覆盖顶点，按边索引升序尝试其关联边，因此顺序是确定的。
    平行边给出不同的匹配。
    """
    if not g.is_graph:
        raise NotCubicError("完美匹配枚举", g.dangling_count)

    n = g.num_vertices
    covered = [False] * n
    chosen: List[int] = []
    result: List[FrozenSet[int]] = []

    def extend(start: int) -> None:
        vertex = start
        while vertex < n and covered[vertex]:
            vertex += 1
        if vertex == n:
            result.append(frozenset(chosen))
            return
        covered[vertex] = True
        for e in sorted(g.incidence[vertex]):
            edge = g.edges[e]
            other = edge.v if edge.u == vertex else edge.u
            if covered[other]:
                continue
            covered[other] = True
            chosen.append(e)
            extend(vertex + 1)
            chosen.pop()
            covered[other] = False
        covered[vertex] = False

    extend(0)
    return result


def is_perfect_matching(g: Multipole, matching: FrozenSet[int]) -> bool:
    seen = set()
    for e in matching:
        if not 0 <= e < g.num_edges or g.edges[e].v is None:
            return False
        for vertex in g.edges[e].ends():
            if vertex in seen:
                return False
            seen.add(vertex)
    return len(seen) == g.num_vertices


def verify_cover(g: Multipole, cover: CoverCertificate) -> None:
    """
    校验覆盖证书: 每个成员都是完美匹配，并集是全部边。

    引发:
        InvalidCoverError: 校验失败
    """
    union = set()
    for index, matching in enumerate(cover.matchings):
        if not is_perfect_matching(g, matching):
            raise InvalidCoverError("不是完美匹配", matching=index)
        union |= matching
    missing = sorted(set(range(g.num_edges)) - union)
    if missing:
        raise InvalidCoverError("存在未被覆盖的边", edge=missing[0])


# ============================================================================
# 精确集合覆盖
# ============================================================================

def _set_cover(masks: Sequence[int], universe: int, half: int, k: int, stats: SearchStats) -> Optional[List[int]]:
    """
    用 k 个匹配覆盖 universe 的分支定界搜索。

    每一步在覆盖它的匹配最少的未覆盖边上分支；剩余容量 k·|V|/2 不足时剪枝。
    """
    edge_count = universe.bit_length()
    covering = [[i for i, mask in enumerate(masks) if mask >> e & 1] for e in range(edge_count)]
    chosen: List[int] = []

    def search(uncovered: int, slots: int) -> bool:
        stats.nodes += 1
        if not uncovered:
            return True
        if slots == 0 or bin(uncovered).count("1") > slots * half:
            return False
        best = None
        bits = uncovered
        while bits:
            low = bits & -bits
            e = low.bit_length() - 1
            bits ^= low
            if best is None or len(covering[e]) < len(covering[best]):
                best = e
        for i in covering[best]:
            chosen.append(i)
            if search(uncovered & ~masks[i], slots - 1):
                return True
            chosen.pop()
        return False

    if search(universe, k):
        return list(chosen)
    return None


@dataclass
class PmiResult:
    """完美匹配指数的计算结果"""
    verdict: Verdict
    value: Optional[int]
    cap: int
    strategy: PmiStrategy
    certificate: Optional[CoverCertificate] = None
    stats: SearchStats = field(default_factory=SearchStats)
    refuted: Dict[int, int] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "verdict": self.verdict.value,
            "value": self.value,
            "cap": self.cap,
            "strategy": self.strategy.value,
            "certificate": self.certificate.to_dict() if self.certificate else None,
            "statistics": self.stats.to_dict(),
            "refuted": {str(k): nodes for k, nodes in sorted(self.refuted.items())},
        }


def _require_bridgeless_graph(g: Multipole, operation: str) -> None:
    if not g.is_graph:
        raise NotCubicError(operation, g.dangling_count)
    bridges = find_bridges(g)
    if bridges:
        raise BridgeError(operation, bridges[0])


def perfect_matching_index(
    g: Multipole,
    cap: Optional[int] = None,
    strategy: PmiStrategy = PmiStrategy.AUTO,
    T: Optional[Tetrahedron] = None
) -> PmiResult:
    """
    计算 π(G) ≤ cap 的精确值，或给出 "π > cap" 的穷举判定。

    参数:
        g: 无桥三正则图
        cap: 上限（≥ 3）
        strategy: cover 对全部完美匹配做精确集合覆盖；
                  flow 对 k=3 用 3-边着色、对 k=4 用 T-流搜索，k ≥ 5 再用集合覆盖；
                  auto 在顶点数超过阈值时使用 flow
        T: flow 策略使用的四面体

    引发:
        BridgeError: 图有桥
        NotCubicError: 输入带有悬挂边
    """
    cap = config.search.PMI_CAP if cap is None else cap
    _require_bridgeless_graph(g, "完美匹配指数")
    if strategy == PmiStrategy.AUTO:
        strategy = PmiStrategy.COVER if g.num_vertices <= config.search.COVER_STRATEGY_MAX_VERTICES else PmiStrategy.FLOW
    T = T or Tetrahedron()

    result = PmiResult(verdict=Verdict.EXCEEDS_CAP, value=None, cap=cap, strategy=strategy)
    if g.num_edges == 0:
        result.verdict, result.value = Verdict.EXACT, 0
        result.certificate = CoverCertificate(())
        return result

    matchings: Optional[List[FrozenSet[int]]] = None
    half = g.num_vertices // 2
    universe = (1 << g.num_edges) - 1

    for k in range(1, cap + 1):
        before = result.stats.nodes
        certificate = None
        if k < 3:
            # 三正则图的每个顶点关联三条边，至少需要三个匹配
            result.stats.nodes += 1
        elif strategy == PmiStrategy.FLOW and k == 3:
            colouring = three_edge_colouring(g)
            result.stats.nodes += 1
            if colouring is not None:
                certificate = CoverCertificate(tuple(
                    frozenset(e for e, colour in enumerate(colouring) if colour == c) for c in range(3)
                ))
        elif strategy == PmiStrategy.FLOW and k == 4:
            flow, flow_stats = find_tetra_flow(g, T)
            result.stats.merge(flow_stats)
            if flow is not None:
                certificate = flow_to_cover(g, flow, T)
        else:
            if matchings is None:
                matchings = enumerate_perfect_matchings(g)
                logger.debug(f"完美匹配个数: {len(matchings)}")
            masks = [sum(1 << e for e in m) for m in matchings]
            chosen = _set_cover(masks, universe, half, k, result.stats)
            if chosen is not None:
                certificate = CoverCertificate(tuple(matchings[i] for i in chosen))

        if certificate is not None:
            verify_cover(g, certificate)
            result.verdict, result.value, result.certificate = Verdict.EXACT, k, certificate
            logger.info(f"π = {k} (策略 {strategy.value}, 节点数 {result.stats.nodes})")
            return result
        result.refuted[k] = result.stats.nodes - before

    logger.info(f"π > {cap} (策略 {strategy.value}, 节点数 {result.stats.nodes})")
    return result


# ============================================================================
# 覆盖与 T-流
# ============================================================================

def cover_to_flow(g: Multipole, cover: CoverCertificate, T: Tetrahedron) -> Tuple[int, ...]:
    """
    把有序 4-覆盖转换为 T-流: 边 e 的值由 "e 不在 P_i 中" 的位向量确定。

    引发:
        InvalidCoverError: 覆盖不是 4 个完美匹配，或某条边的覆盖次数不是 1 或 2
    """
    if cover.size != 4:
        raise InvalidCoverError(f"需要 4 个完美匹配，实际为 {cover.size}")
    verify_cover(g, cover)
    flow = []
    for e in range(g.num_edges):
        bits = tuple(0 if e in matching else 1 for matching in cover.matchings)
        value = point_from_cover_coordinates(T, bits)
        if value is None:
            raise InvalidCoverError(f"边被 {bits.count(0)} 个匹配覆盖", edge=e)
        flow.append(value)
    return tuple(flow)


def flow_to_cover(g: Multipole, flow: Sequence[int], T: Tetrahedron) -> CoverCertificate:
    """
    把 T-流转换为有序 4-覆盖: P_i 是覆盖坐标第 i 位为 0 的边。

    引发:
        InvalidFlowError: flow 不是 T-流（包括取值为 0 的边）
    """
    if not is_valid_tetra_flow(g, T, flow):
        raise InvalidFlowError("不是有效的 T-流")
    coordinates = [cover_coordinates(T, value) for value in flow]
    return CoverCertificate(tuple(
        frozenset(e for e, bits in enumerate(coordinates) if bits[i] == 0) for i in range(4)
    ))


def count_ordered_covers(g: Multipole, k: int = 4) -> int:
    """并集为 E(G) 的有序 k 元完美匹配组（允许重复）的个数"""
    matchings = enumerate_perfect_matchings(g)
    masks = [sum(1 << e for e in m) for m in matchings]
    universe = (1 << g.num_edges) - 1
    count = 0
    for combo in product(masks, repeat=k):
        union = 0
        for mask in combo:
            union |= mask
        if union == universe:
            count += 1
    return count


def cover_flow_counts(g: Multipole, T: Optional[Tetrahedron] = None) -> Dict[str, int]:
    """并列给出有序 4-覆盖个数和 T-流个数"""
    T = T or Tetrahedron()
    return {"ordered_covers": count_ordered_covers(g, 4), "tetra_flows": count_tetra_flows(g, T)}
