"""
构造命令
提供重叠加的构造、π ≥ 5 证书以及可选的圆流数上下界
"""

from typing import Any, Dict

from ..exceptions import HypothesisError
from ..flows.circular import refute_9_2_flow_on_superposition
from ..flows.templates import construct_14_3_flow
from ..geometry.tetrahedron import Tetrahedron
from ..monitoring.logger import setup_logger
from ..multipole.invariants import snark_report
from ..parsers.base import load_plan
from ..parsers.multipole_doc import MultipoleDocumentParser
from ..superposition.certificate import build_heaviness_certificate, certify_pmi_at_least_5
from ..superposition.construction import heavy_superposition
from ..types import ResultDocument, SuperpositionParams, Verdict
from .common import make_document, run_command

logger = setup_logger(__name__)


def build_superposition_sync(params: SuperpositionParams) -> ResultDocument:
    """
    构造重叠加并给出证书

    参数:
        params: 方案（"basic:<图>" 或方案文档）、可选的图输出路径和是否计算圆流数界

    返回:
        带 snark 报告、重性证书和 π ≥ 5 计数链的文档；full_report 时附加 Φ_c 的上下界证书。
        方案中有非重超边时为 refused 判定
    """
    plan = load_plan(params.plan)
    T = Tetrahedron()
    heaviness = build_heaviness_certificate(plan, T, params.threads)
    try:
        superposition = heavy_superposition(plan, check_heavy=True, threads=params.threads)
    except HypothesisError as e:
        logger.warning(f"方案被拒绝: {e.message}")
        return make_document(
            "build-superposition", params, verdict=Verdict.REFUSED.value, passed=False,
            graph=params.plan, value=None,
            certificate={"kind": "superposition", "heaviness": heaviness.to_dict(), "refusal": e.to_dict()},
            statistics=heaviness.stats.to_dict(),
        )

    graph = superposition.graph
    certificate: Dict[str, Any] = {
        "kind": "superposition",
        "plan": params.plan,
        "vertices": graph.num_vertices,
        "edges": graph.num_edges,
        "report": snark_report(graph),
        "pi_at_least_5": certify_pmi_at_least_5(graph, plan, heaviness, T),
    }
    claims = ["pi>=5"]

    if params.full_report:
        certificate["phi_c_gt_9_2"] = refute_9_2_flow_on_superposition(graph, plan, params.threads)
        claims.append("phi_c>9/2")
        try:
            flow = construct_14_3_flow(superposition, threads=params.threads)
        except HypothesisError as e:
            certificate["flow_14_3"] = {"skipped": e.message}
        else:
            certificate["flow_14_3"] = flow.to_dict()
            claims.append("phi_c<=14/3")

    if params.write_graph:
        MultipoleDocumentParser().write_file(graph, params.write_graph)

    return make_document(
        "build-superposition", params, verdict=Verdict.PASS.value,
        graph=params.plan, value="; ".join(claims),
        certificate=certificate, statistics=heaviness.stats.to_dict(),
    )


def _build(args) -> ResultDocument:
    params = SuperpositionParams(
        plan=args.plan, write_graph=args.write_graph, full_report=args.full_report,
        threads=args.threads, seed=args.seed,
    )
    return run_command("build-superposition", params, build_superposition_sync)


def register_construction_tools(subparsers):
    """注册构造命令"""
    parser = subparsers.add_parser("build-superposition", help="构造重叠加并证明 π ≥ 5")
    parser.add_argument("plan", help="basic:<图> 或方案文档")
    parser.add_argument("--write-graph", help="把得到的图写成多极子文档")
    parser.add_argument("--full-report", action="store_true", help="同时证明 9/2 < Φ_c ≤ 14/3")
    parser.set_defaults(handler=_build)
