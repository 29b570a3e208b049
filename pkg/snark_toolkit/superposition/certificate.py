"""
π(G̃) ≥ 5 的重性证书

计数论证: 四面体的每条线恰含一个中点，因此在任意 T-流下每个提升顶点恰好关联一条取中点值的边，
超边悬挂边中共有 2n 条重边。m 条超边平均 2n/m = 4/3 < 2 条，
与每条超边都是重偶极子矛盾，所以 G̃ 没有 T-流，π(G̃) ≥ 5。
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

from ..exceptions import CertificateError
from ..geometry.tetrahedron import Tetrahedron, lines_with_one_midpoint
from ..monitoring.logger import setup_logger
from ..multipole.core import Multipole
from ..transitions.analysis import transition_relation
from ..transitions.relations import R, format_relation
from ..types import SearchStats, Verdict, format_fraction
from .construction import SuperpositionPlan, realizes_plan

logger = setup_logger(__name__)


@dataclass(frozen=True)
class SuperedgeRecord:
    """单条超边的重性记录"""
    name: str
    vertices: int
    heavy: bool
    within_r: bool
    relation: Tuple[str, ...]
    realizable_tuples: int

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "vertices": self.vertices,
            "heavy": self.heavy,
            "within_R": self.within_r,
            "relation": list(self.relation),
            "realizable_tuples": self.realizable_tuples,
        }


@dataclass
class HeavinessCertificate:
    """每条不同超边的重性记录加上计数摘要"""
    records: Dict[str, SuperedgeRecord]
    n: int
    m: int
    stats: SearchStats = field(default_factory=SearchStats)

    @property
    def ratio(self) -> Fraction:
        return Fraction(2 * self.n, self.m) if self.m else Fraction(0)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": "heaviness",
            "superedges": [self.records[name].to_dict() for name in sorted(self.records)],
            "n": self.n,
            "m": self.m,
            "ratio": format_fraction(self.ratio),
            "statistics": self.stats.to_dict(),
        }


def build_heaviness_certificate(
    plan: SuperpositionPlan,
    T: Optional[Tetrahedron] = None,
    threads: int = 1
) -> HeavinessCertificate:
    """对方案中每条不同的超边计算可实现边界元组，记录重性和 T(X_e) ⊆ R"""
    T = T or Tetrahedron()
    stats = SearchStats()
    records = {}
    for name, dipole in plan.distinct_superedges().items():
        result = transition_relation(dipole, T, threads)
        stats.merge(result.stats)
        heavy = all(sum(1 for x in values if not T.is_corner(x)) >= 2 for values in result.tuples)
        records[name] = SuperedgeRecord(
            name=name,
            vertices=dipole.num_vertices,
            heavy=heavy,
            within_r=result.shapes <= R,
            relation=tuple(format_relation(result.shapes)),
            realizable_tuples=len(result.tuples),
        )
        logger.debug(f"超边 {name}: 重={heavy}, 转移 {format_relation(result.shapes)}")
    return HeavinessCertificate(records, plan.base.num_vertices, plan.base.num_edges, stats)


def certify_pmi_at_least_5(
    graph: Multipole,
    plan: SuperpositionPlan,
    certificate: HeavinessCertificate,
    T: Optional[Tetrahedron] = None
) -> Dict[str, Any]:
    """
    逐步校验计数链并给出 "π ≥ 5" 判定。

    引发:
        CertificateError: 证书没有覆盖全部超边、某条超边不是重偶极子、图与方案不一致，或计数不等式不成立
    """
    T = T or Tetrahedron()
    missing = sorted(set(plan.names) - set(certificate.records))
    if missing:
        raise CertificateError("heaviness", "证书没有覆盖全部超边", {"missing": missing})

    light = sorted(name for name in set(plan.names) if not certificate.records[name].heavy)
    if light:
        raise CertificateError("heaviness", "存在不是重偶极子的超边", {"superedges": light})

    n, m = plan.base.num_vertices, plan.base.num_edges
    if (certificate.n, certificate.m) != (n, m):
        raise CertificateError("heaviness", "证书的计数摘要与方案不一致")
    if not realizes_plan(graph, plan):
        raise CertificateError(
            "heaviness", "图不是方案的重叠加",
            {"vertices": graph.num_vertices, "expected": plan.expected_vertices()}
        )

    steps: List[Dict[str, Any]] = []
    one_midpoint = lines_with_one_midpoint(T)
    steps.append({"step": "每条线恰含一个中点", "passed": one_midpoint})
    heavy_edges = 2 * n
    steps.append({"step": "重边界边总数", "value": heavy_edges, "passed": one_midpoint})
    ratio = Fraction(heavy_edges, m)
    steps.append({"step": "每条超边的平均重边数", "value": format_fraction(ratio), "passed": ratio < 2})
    steps.append({"step": "所有超边都是重偶极子", "passed": True, "superedges": sorted(certificate.records)})

    if not all(step["passed"] for step in steps):
        raise CertificateError("heaviness", "计数链校验失败", {"steps": steps})

    logger.info(f"π ≥ 5 证书通过: n={n}, m={m}, 2n/m={format_fraction(ratio)}")
    return {
        "verdict": Verdict.PASS.value,
        "claim": "pi>=5",
        "steps": steps,
        "certificate": certificate.to_dict(),
    }
