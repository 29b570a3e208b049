"""
圆流

实数 r-流 (r = p/q) 的每条边值满足 1 ≤ |v| ≤ r − 1。乘以 q 后就是整数 (p,q)-流:
整数值满足 q ≤ |v| ≤ p − q。模 (p,q)-流把值约化到 Z_p 中的 [q, p − q]。
判定先在 Z_p 上搜索模流，再用 networkx 的最小费用流把模流提升为整数流。

方向约定: 内部边 u → v，悬挂边从自由端指向所连顶点。Kirchhoff 条件是每个顶点的流入总和为 0。
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import gcd
from typing import TYPE_CHECKING, Any, Dict, List, Optional, Sequence, Tuple, Union

import networkx as nx

from ..exceptions import BridgeError, CertificateError, FlowError, InvalidFlowParametersError, NotCubicError
from ..monitoring.logger import setup_logger
from ..multipole.core import Dipole, Multipole
from ..multipole.invariants import find_bridges
from ..multipole.search import EdgeAssignmentSearch
from ..types import FlowUnits, FlowValuation, SearchStats, Verdict, format_fraction
from ..utils import parallel_map

if TYPE_CHECKING:
    from ..superposition.construction import SuperpositionPlan

logger = setup_logger(__name__)

HALF_INTEGRALITY_LEMMA = (
    "half-integrality: a cubic graph admits a nowhere-zero modular 9/2-flow only if it admits one "
    "whose values are half-integers (external result, assumed and not re-proved here)"
)


def incidence_signs(m: Multipole) -> Tuple[Dict[int, int], ...]:
    """每个顶点上各关联边的流入符号: 流入为 +1，流出为 -1"""
    signs = []
    for w in range(m.num_vertices):
        table = {}
        for e in m.incidence[w]:
            edge = m.edges[e]
            table[e] = 1 if edge.v is None or edge.v == w else -1
        signs.append(table)
    return tuple(signs)


def validate_pq(p: int, q: int) -> Tuple[int, int]:
    """
    校验并约化 (p, q)。(kp, kq)-流与 (p, q)-流的存在性相同，因此先除以最大公约数。

    返回:
        互素的 (p, q)

    引发:
        InvalidFlowParametersError: p、q 不是正整数或 p < 2q
    """
    if q < 1 or p < 1:
        raise InvalidFlowParametersError(p, q, "p、q 必须是正整数")
    k = gcd(p, q)
    if k != 1:
        logger.debug(f"({p},{q}) 约化为 ({p // k},{q // k})")
        p, q = p // k, q // k
    if p < 2 * q:
        raise InvalidFlowParametersError(p, q, "要求 p ≥ 2q")
    return p, q


# ============================================================================
# 搜索
# ============================================================================

class ModularFlowSearch(EdgeAssignmentSearch):
    """
    Z_p 上的模流，取值 q..p-q。

    half_first 为 True 时第一条边只取 ≤ p/2 的值（取负对称性）。
    """

    def __init__(self, m: Multipole, p: int, q: int, half_first: bool = False):
        super().__init__(m, range(q, p - q + 1))
        self.p, self.q = p, q
        self.signs = incidence_signs(m)
        self.first_edge = self.order[0] if half_first and self.order else None
        self.half = tuple(v for v in self.candidates if 2 * v <= p)

    def candidates_for(self, edge):
        return self.half if edge == self.first_edge else self.candidates

    def third(self, vertex, a, va, b, vb, c):
        s = self.signs[vertex]
        z = (-(s[a] * va + s[b] * vb) * s[c]) % self.p
        return z if self.q <= z <= self.p - self.q else 0

    def closes(self, vertex, a, va, b, vb, c, vc):
        s = self.signs[vertex]
        return (s[a] * va + s[b] * vb + s[c] * vc) % self.p == 0


class IntegerFlowSearch(EdgeAssignmentSearch):
    """
    精确 Kirchhoff 条件下的整数流，|值| ∈ [low, high]。

    取值顺序为 low, -low, low+1, -(low+1), ...；allowed 可为个别边限定取值。
    """

    def __init__(
        self,
        m: Multipole,
        low: int,
        high: int,
        half_first: bool = False,
        allowed: Optional[Dict[int, Sequence[int]]] = None,
        max_nodes: Optional[int] = None
    ):
        values = [x for k in range(low, high + 1) for x in (k, -k)]
        super().__init__(m, values, max_nodes=max_nodes)
        self.low, self.high = low, high
        self.signs = incidence_signs(m)
        self.allowed = dict(allowed or {})
        if half_first and self.order and self.order[0] not in self.allowed:
            self.allowed[self.order[0]] = tuple(v for v in values if v > 0)

    def candidates_for(self, edge):
        return self.allowed.get(edge, self.candidates)

    def third(self, vertex, a, va, b, vb, c):
        s = self.signs[vertex]
        z = -(s[a] * va + s[b] * vb) * s[c]
        if not self.low <= abs(z) <= self.high:
            return 0
        allowed = self.allowed.get(c)
        if allowed is not None and z not in allowed:
            return 0
        return z

    def closes(self, vertex, a, va, b, vb, c, vc):
        s = self.signs[vertex]
        return s[a] * va + s[b] * vb + s[c] * vc == 0


# ============================================================================
# (p,q)-流判定
# ============================================================================

@dataclass
class CircularFlowResult:
    """(p,q)-流判定结果；found 为 False 时统计给出穷举证据"""
    p: int
    q: int
    found: bool
    witness: Optional[FlowValuation] = None
    modular: Optional[Tuple[int, ...]] = None
    stats: SearchStats = field(default_factory=SearchStats)

    @property
    def r(self) -> Fraction:
        return Fraction(self.p, self.q)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "p": self.p,
            "q": self.q,
            "r": format_fraction(self.r),
            "verdict": (Verdict.FOUND if self.found else Verdict.NONE).value,
            "witness": self.witness.to_dict() if self.witness else None,
            "statistics": self.stats.to_dict(),
        }


def _require_bridgeless(g: Multipole, operation: str) -> None:
    if not g.is_graph:
        raise NotCubicError(operation, g.dangling_count)
    bridges = find_bridges(g)
    if bridges:
        raise BridgeError(operation, bridges[0])


def lift_modular_flow(g: Multipole, residues: Sequence[int], p: int) -> Tuple[int, ...]:
    """
    把模 p 流提升为整数流: g_e = f_e - p·x_e，x_e ∈ {0, 1}。

    x 是一个 0/1 流，顶点 w 的需求为 f 在 w 的净流入除以 p，交给 network_simplex 求解。

    引发:
        FlowError: 提升不可行（输入不是模流时出现）
    """
    signs = incidence_signs(g)
    network = nx.MultiDiGraph()
    for w in range(g.num_vertices):
        inflow = sum(signs[w][e] * residues[e] for e in g.incidence[w])
        if inflow % p:
            raise FlowError(f"顶点 {w} 上不满足模 {p} 的 Kirchhoff 条件")
        network.add_node(w, demand=inflow // p)
    for index, edge in enumerate(g.edges):
        network.add_edge(edge.u, edge.v, key=index, capacity=1, weight=0)
    try:
        _, flow_dict = nx.network_simplex(network)
    except nx.NetworkXUnfeasible:
        raise FlowError("模流无法提升为整数流") from None
    return tuple(
        residues[index] - p * flow_dict[edge.u][edge.v][index]
        for index, edge in enumerate(g.edges)
    )


def has_circular_pq_flow(g: Multipole, p: int, q: int) -> CircularFlowResult:
    """
    判定 g 是否有整数 (p,q)-流（等价于实数 p/q-流）。

    参数:
        g: 无桥图
        p, q: 正整数且 p ≥ 2q；不互素时先约化

    返回:
        找到时附带经 verify_flow 校验的整数见证
    """
    p, q = validate_pq(p, q)
    _require_bridgeless(g, "圆流判定")
    result = CircularFlowResult(p, q, False)
    if g.num_edges == 0:
        result.found, result.witness = True, FlowValuation((), p, q, FlowUnits.INTEGER)
        return result

    search = ModularFlowSearch(g, p, q, half_first=True)
    residues = search.first()
    result.stats.merge(search.stats)
    result.stats.queries += 1
    if residues is None:
        logger.debug(f"({p},{q})-流不存在，穷举节点数 {result.stats.nodes}")
        return result

    values = lift_modular_flow(g, residues, p)
    witness = FlowValuation(tuple(Fraction(v) for v in values), p, q, FlowUnits.INTEGER)
    if not verify_flow(g, witness, p, q):
        raise FlowError(f"({p},{q})-流见证未通过校验")
    result.found, result.witness, result.modular = True, witness, residues
    logger.debug(f"找到 ({p},{q})-流，搜索节点数 {result.stats.nodes}")
    return result


def search_integer_pq_flow(g: Multipole, p: int, q: int) -> Tuple[Optional[Tuple[int, ...]], SearchStats]:
    """直接在整数上搜索 (p,q)-流，用于与模搜索交叉验证"""
    p, q = validate_pq(p, q)
    _require_bridgeless(g, "整数圆流搜索")
    search = IntegerFlowSearch(g, q, p - q, half_first=True)
    return search.first(), search.stats


# ============================================================================
# 校验
# ============================================================================

def verify_flow(
    g: Multipole,
    flow: Union[FlowValuation, Sequence[Fraction]],
    p: int,
    q: int,
    modular: bool = False
) -> bool:
    """
    用精确有理数校验圆流。

    参数:
        g: 多极子（悬挂边按流入方向计入 Kirchhoff 条件）
        flow: FlowValuation，或实数单位下的值序列
        p, q: r = p/q
        modular: 为 True 时值和 Kirchhoff 和都在模 r 意义下检查

    返回:
        每条边满足 1 ≤ |v| ≤ r − 1（模意义下 1 ≤ v mod r ≤ r − 1）且每个顶点满足 Kirchhoff 条件时为 True
    """
    if isinstance(flow, FlowValuation):
        scale = Fraction(1, flow.q) if flow.units != FlowUnits.REAL else Fraction(1)
        values = [Fraction(v) * scale for v in flow.values]
    else:
        values = [Fraction(v) for v in flow]
    if len(values) != g.num_edges:
        return False

    r = Fraction(p, q)
    for value in values:
        if modular:
            reduced = value % r
            if not 1 <= reduced <= r - 1:
                return False
        elif not 1 <= abs(value) <= r - 1:
            return False

    signs = incidence_signs(g)
    for w in range(g.num_vertices):
        total = sum((signs[w][e] * values[e] for e in g.incidence[w]), Fraction(0))
        if (total % r if modular else total) != 0:
            return False
    return True


# ============================================================================
# 圆流数
# ============================================================================

def farey_candidates(q_max: int, low: Fraction = Fraction(2), high: Fraction = Fraction(6)) -> List[Tuple[int, int]]:
    """low ≤ p/q ≤ high、q ≤ q_max、gcd(p, q) = 1 的 (p, q)，按 p/q 升序"""
    result = []
    for q in range(1, q_max + 1):
        for p in range(int(low * q), int(high * q) + 1):
            if gcd(p, q) == 1 and low <= Fraction(p, q) <= high:
                result.append((p, q))
    return sorted(result, key=lambda pq: Fraction(pq[0], pq[1]))


@dataclass
class CfnResult:
    """圆流数及其证据: Φ_c 处的见证和所有更小候选的拒绝"""
    value: Fraction
    q_max: int
    witness: CircularFlowResult
    refusals: List[CircularFlowResult]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "value": format_fraction(self.value),
            "q_max": self.q_max,
            "exact_relative_to_q_max": True,
            "witness": self.witness.to_dict(),
            "refusals": [
                {"p": r.p, "q": r.q, "verdict": Verdict.NONE.value, "nodes": r.stats.nodes}
                for r in self.refusals
            ],
        }


def _decide(task: Tuple[Multipole, int, int]) -> CircularFlowResult:
    g, p, q = task
    return has_circular_pq_flow(g, p, q)


def circular_flow_number(g: Multipole, q_max: int = 3, threads: int = 1) -> CfnResult:
    """
    按升序检查法里候选 p/q（q ≤ q_max），返回第一个有流的候选。

    结果只相对于 q_max 精确: 真正的 Φ_c 的分母可能超过 q_max。

    引发:
        BridgeError: 图有桥
        FlowError: 直到 6 都没有找到流
    """
    if q_max < 1:
        raise InvalidFlowParametersError(0, q_max, "q_max 必须 ≥ 1")
    _require_bridgeless(g, "圆流数")
    candidates = farey_candidates(q_max)
    refusals: List[CircularFlowResult] = []
    batch = max(1, threads)
    for start in range(0, len(candidates), batch):
        chunk = candidates[start:start + batch]
        results = parallel_map(_decide, [(g, p, q) for p, q in chunk], threads)
        for result in results:
            if result.found:
                logger.info(f"圆流数 Φ_c = {format_fraction(result.r)} (q ≤ {q_max})")
                return CfnResult(result.r, q_max, result, refusals)
            refusals.append(result)
    raise FlowError("直到 r = 6 都没有找到圆流")


# ============================================================================
# 偶极子的总流
# ============================================================================

@dataclass
class TotalsResult:
    """模 (p,q)-流通过偶极子的全部可实现总流"""
    p: int
    q: int
    totals: Tuple[Fraction, ...]
    input_pairs: Tuple[Tuple[int, int], ...]
    stats: SearchStats = field(default_factory=SearchStats)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "p": self.p,
            "q": self.q,
            "totals": [format_fraction(t) for t in self.totals],
            "input_pairs": [list(pair) for pair in self.input_pairs],
            "statistics": self.stats.to_dict(),
        }


def _modular_query(task: Tuple[Multipole, int, int, Tuple[int, ...], Tuple[int, ...]]) -> Tuple[bool, int]:
    m, p, q, edges, values = task
    search = ModularFlowSearch(m, p, q)
    for edge, value in zip(edges, values):
        if not search.fix(edge, value):
            return False, search.stats.nodes
    return search.first() is not None, search.stats.nodes


def residue_representative(s: int, p: int) -> int:
    """s mod p 在 (-p/2, p/2] 中的代表"""
    s %= p
    return s if 2 * s <= p else s - p


def modular_totals_through(d: Dipole, p: int, q: int, threads: int = 1) -> TotalsResult:
    """
    模 (p,q)-流通过偶极子的总流（输入悬挂边的流入值之和）的全部可实现值。

    对每个输入值组合做一次存在性查询；f 与 -f 同时是模流，因此只查询镜像对中较小的一个。
    总流以实数单位报告，代表元取在 (-p/2q, p/2q] 中。
    """
    p, q = validate_pq(p, q)
    edges = d.input_edges()
    values = list(range(q, p - q + 1))

    queries = []
    for combo in product(values, repeat=len(edges)):
        mirror = tuple(p - v for v in combo)
        if combo <= mirror:
            queries.append(combo)

    tasks = [(d.base, p, q, edges, combo) for combo in queries]
    answers = parallel_map(_modular_query, tasks, threads)

    stats = SearchStats(queries=len(queries))
    realizable = set()
    for combo, (found, nodes) in zip(queries, answers):
        stats.nodes += nodes
        if found:
            realizable.add(combo)
            realizable.add(tuple(p - v for v in combo))

    totals = sorted({Fraction(residue_representative(sum(combo), p), q) for combo in realizable})
    logger.debug(f"({p},{q}) 总流: {[format_fraction(t) for t in totals]}")
    return TotalsResult(p, q, tuple(totals), tuple(sorted(realizable)), stats)


# ============================================================================
# 重叠加上的 9/2-流反驳
# ============================================================================

def refute_9_2_flow_on_superposition(
    graph: Multipole,
    plan: "SuperpositionPlan",
    threads: int = 1
) -> Dict[str, Any]:
    """
    证明 Φ_c(G̃) > 9/2。

    每条超边的模 (9,2) 总流都属于 {±1/2}。在每个基图顶点，两个提升顶点的 Kirchhoff 条件
    相加给出三个总流之和 ≡ 0 (mod 9/2)，而三个 ±1/2 之和只能是 ±1/2 或 ±3/2。
    把实数流约化为半整数模流的一步是引用的外部结果。

    引发:
        CertificateError: 某条超边的总流不在 {±1/2} 中，或图与方案不一致
    """
    from ..superposition.construction import realizes_plan

    p, q = 9, 2
    r = Fraction(p, q)
    if not realizes_plan(graph, plan):
        raise CertificateError("9/2-refutation", "图不是方案的重叠加")

    allowed = {Fraction(1, 2), Fraction(-1, 2)}
    records = []
    for name, dipole in plan.distinct_superedges().items():
        totals = modular_totals_through(dipole, p, q, threads)
        within = set(totals.totals) <= allowed
        records.append({"superedge": name, "totals": [format_fraction(t) for t in totals.totals], "within": within})
        if not within:
            raise CertificateError(
                "9/2-refutation", f"超边 {name} 的总流不全是 ±1/2",
                {"superedge": name, "totals": [format_fraction(t) for t in totals.totals]}
            )

    zero_sum = [
        (a, b, c) for a in sorted(allowed) for b in sorted(allowed) for c in sorted(allowed)
        if ((a + b + c) / r).denominator == 1
    ]
    if zero_sum:
        raise CertificateError("9/2-refutation", "存在和为 0 的总流组合")

    logger.info("Φ_c > 9/2 证书通过")
    return {
        "verdict": Verdict.PASS.value,
        "claim": "phi_c>9/2",
        "superedges": records,
        "possible_vertex_sums": [format_fraction(s) for s in sorted({a + b + c for a in allowed for b in allowed for c in allowed})],
        "assumed_lemma": HALF_INTEGRALITY_LEMMA,
    }
