"""
基本超边上的流模板与 14/3-流构造

模板是基本超边上的整数流，所有值满足 3 ≤ |v| ≤ M。颜色 k 的模板在悬挂边
(in0, in1, out0, out1) 上的流入值为 (c_k, -c_k, c_k, -c_k)，并要求 c_1 + c_2 + c_3 = 0。
在重叠加上按基图的 3-边着色铺放模板，每个提升顶点处三个边界值之和为 0，
全部除以 3 就得到值在 [1, M/3] 中的实数流。
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import TYPE_CHECKING, Any, Dict, List, Optional, Sequence, Tuple

from ..config import config
from ..exceptions import HypothesisError, InvalidFlowError, SearchExhaustedError
from ..monitoring.logger import setup_logger
from ..multipole.core import Dipole, Multipole
from ..multipole.invariants import three_edge_colouring
from ..types import FlowUnits, FlowValuation, SearchStats, format_fraction
from ..utils import parallel_map
from .circular import IntegerFlowSearch, verify_flow

if TYPE_CHECKING:
    from ..superposition.construction import Superposition

logger = setup_logger(__name__)

# 重叠加的圆流数下界；模板上界不超过它对应的值时不可能存在
PHI_LOWER_BOUND = Fraction(9, 2)
# 构造给出的圆流上界
PHI_UPPER_BOUND = Fraction(14, 3)


@dataclass(frozen=True)
class SuperedgeTemplate:
    """一个颜色类的模板: values 按超边的边索引排列"""
    colour: int
    c: int
    values: Tuple[int, ...]

    @property
    def boundary(self) -> Tuple[int, int, int, int]:
        return (self.c, -self.c, self.c, -self.c)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "colour": self.colour,
            "c": self.c,
            "boundary": list(self.boundary),
            "values": list(self.values),
            "max_abs": max(abs(v) for v in self.values),
        }


@dataclass
class TemplateSet:
    """三个颜色类的模板及搜索记录"""
    superedge: Dipole
    templates: Tuple[SuperedgeTemplate, SuperedgeTemplate, SuperedgeTemplate]
    max_value: int
    scale: int
    realizable: Tuple[int, ...]
    undecided: Tuple[int, ...] = ()
    stats: SearchStats = field(default_factory=SearchStats)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": "superedge_templates",
            "max_value": self.max_value,
            "scale": self.scale,
            "boundary_constants": [t.c for t in self.templates],
            "realizable": list(self.realizable),
            "undecided": list(self.undecided),
            "templates": [t.to_dict() for t in self.templates],
            "statistics": self.stats.to_dict(),
        }


def minimal_template_bound(scale: int) -> int:
    """
    最小的可能模板上界 M。

    若所有值都不超过 M，则除以 scale 后得到 (M + scale)/scale-流；
    该值不超过 Φ_c 的下界 9/2 时模板不可能存在。
    """
    m = scale
    while Fraction(m + scale, scale) <= PHI_LOWER_BOUND:
        m += 1
    return m


def _template_query(task: Tuple[Multipole, Tuple[int, ...], int, int, int, Optional[int]]) -> Tuple[Optional[Tuple[int, ...]], bool, int]:
    """边界为 (c, -c, c, -c) 的单个模板查询；进程池的工作函数"""
    m, edges, c, low, high, node_limit = task
    search = IntegerFlowSearch(m, low, high, max_nodes=node_limit)
    for edge, value in zip(edges, (c, -c, c, -c)):
        if not search.fix(edge, value):
            return None, False, search.stats.nodes
    solution = search.first()
    return solution, search.aborted, search.stats.nodes


def _zero_sum_triple(realized: Dict[int, Tuple[int, ...]], c: int) -> Optional[Tuple[int, int]]:
    for a in sorted(realized):
        b = c - a
        if a <= b and b in realized and c in realized:
            return a, b
    return None


def derive_superedge_templates(
    superedge: Optional[Dipole] = None,
    max_value: Optional[int] = None,
    node_limit: Optional[int] = None,
    threads: int = 1
) -> TemplateSet:
    """
    搜索三个颜色类的模板。

    先最小化最大绝对值 M（从 minimal_template_bound 开始），再按 c 升序查询边界值，
    在第一个满足 a + b = c 的组合处停止，三种颜色依次取 a、b、-c。
    f 与 -f 同时是流，因此只查询正的 c。

    引发:
        SearchExhaustedError: 直到上界都没有找到模板组合
    """
    from ..superposition.construction import basic_superedge

    x = superedge or basic_superedge()
    scale = config.circular.TEMPLATE_SCALE
    max_value = config.circular.TEMPLATE_MAX_VALUE if max_value is None else max_value
    node_limit = config.circular.TEMPLATE_NODE_LIMIT if node_limit is None else node_limit
    edges = x.input_edges() + x.output_edges()
    stats = SearchStats()
    batch = max(1, threads)

    for bound in range(minimal_template_bound(scale), max_value + 1):
        realized: Dict[int, Tuple[int, ...]] = {}
        undecided: List[int] = []
        values = list(range(scale, bound + 1))
        for start in range(0, len(values), batch):
            chunk = values[start:start + batch]
            tasks = [(x.base, edges, c, scale, bound, node_limit) for c in chunk]
            for c, (solution, aborted, nodes) in zip(chunk, parallel_map(_template_query, tasks, threads)):
                stats.queries += 1
                stats.nodes += nodes
                if solution is not None:
                    realized[c] = solution
                elif aborted:
                    undecided.append(c)
                logger.debug(f"模板 M={bound}, c={c}: {'可实现' if solution else ('未决' if aborted else '不可实现')}")

                pair = _zero_sum_triple(realized, c)
                if pair is None:
                    continue
                a, b = pair
                templates = (
                    SuperedgeTemplate(0, a, realized[a]),
                    SuperedgeTemplate(1, b, realized[b]),
                    SuperedgeTemplate(2, -c, tuple(-v for v in realized[c])),
                )
                stats.solutions = len(realized)
                logger.info(f"超边模板: M={bound}, 边界常数 ({a}, {b}, {-c})")
                return TemplateSet(x, templates, bound, scale, tuple(sorted(realized)), tuple(undecided), stats)

    raise SearchExhaustedError(f"|值| ≤ {max_value} 的超边模板", stats.nodes)


def construct_14_3_flow(
    superposition: "Superposition",
    colouring: Optional[Sequence[int]] = None,
    templates: Optional[TemplateSet] = None,
    threads: int = 1
) -> FlowValuation:
    """
    在基本重叠加上构造实数 (14,3)-流（值在 [1, 11/3] 中）。

    参数:
        superposition: heavy_superposition 的结果，方案必须全部使用模板所在的超边和规范连接
        colouring: 基图的 3-边着色（颜色 0、1、2），默认自动计算
        templates: 预先求得的模板

    引发:
        HypothesisError: 基图不可 3-边着色、模板值超过 11/3 的实数上界，或方案不是基本方案
        InvalidFlowError: 铺放后的流未通过 verify_flow
    """
    from ..superposition.construction import CANONICAL_ATTACHMENT

    plan = superposition.plan
    if colouring is None:
        colouring = three_edge_colouring(plan.base)
        if colouring is None:
            raise HypothesisError("14/3-流", "基图不可 3-边着色")
    templates = templates or derive_superedge_templates(threads=threads)
    limit = (PHI_UPPER_BOUND - 1) * templates.scale
    if templates.max_value > limit:
        raise HypothesisError(
            "14/3-流", f"模板上界 {templates.max_value} 超过 {format_fraction(limit)}",
            {"max_value": templates.max_value, "scale": templates.scale}
        )

    for index, (dipole, attachment) in enumerate(zip(plan.superedges, plan.attachments)):
        if dipole != templates.superedge or tuple(attachment) != CANONICAL_ATTACHMENT:
            raise HypothesisError("14/3-流", f"超边 {index} 不是规范连接的基本超边", {"edge": index})

    scale = templates.scale
    values: List[Optional[Fraction]] = [None] * superposition.graph.num_edges
    for index, edge_map in enumerate(superposition.provenance):
        template = templates.templates[colouring[index]]
        for local, global_index in enumerate(edge_map):
            values[global_index] = Fraction(template.values[local], scale)

    p, q = PHI_UPPER_BOUND.numerator, PHI_UPPER_BOUND.denominator
    flow = FlowValuation(tuple(values), p, q, FlowUnits.REAL)
    if not verify_flow(superposition.graph, flow, p, q):
        raise InvalidFlowError(f"铺放后的流不是 ({p},{q})-流")
    logger.info(f"构造了 {format_fraction(PHI_UPPER_BOUND)}-流，{superposition.graph.num_edges} 条边")
    return flow
