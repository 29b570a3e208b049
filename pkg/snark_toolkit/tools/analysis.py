"""
分析命令
提供完美匹配指数、四面体流、转移关系、圆流数和偶极子总流的命令
"""

from typing import Any, Dict

from ..config import config
from ..flows.circular import circular_flow_number, modular_totals_through
from ..flows.tetra import find_tetra_flow
from ..geometry.tetrahedron import Tetrahedron
from ..matching.cover import flow_to_cover, perfect_matching_index
from ..monitoring.logger import setup_logger
from ..parsers.base import load_dipole, load_graph
from ..transitions.analysis import is_decollineator, is_deangulator, is_heavy, transition_relation
from ..transitions.relations import A, format_relation
from ..types import (
    CfnParams,
    PmiParams,
    PmiStrategy,
    ResultDocument,
    TetraFlowParams,
    TotalsParams,
    TransitionsParams,
    Verdict,
    format_fraction,
)
from .common import make_document, run_command

logger = setup_logger(__name__)


def tetra_flow_certificate(T: Tetrahedron, flow) -> Dict[str, Any]:
    """T-流证书: 四面体的角点和每条边的取值"""
    return {"kind": "tetra_flow", "corners": list(T.corners), "values": list(flow)}


# ============================================================================
# 命令实现
# ============================================================================

def pmi_sync(params: PmiParams) -> ResultDocument:
    """
    计算完美匹配指数

    参数:
        params: 图、上限和策略

    返回:
        π ≤ cap 时附带覆盖证书；否则为 exceeds_cap 判定和各 k 的穷举节点数
    """
    g = load_graph(params.graph)
    result = perfect_matching_index(g, params.cap, params.strategy)
    exact = result.verdict == Verdict.EXACT
    payload = result.to_dict()
    return make_document(
        "pmi", params,
        verdict=result.verdict.value,
        passed=exact,
        graph=params.graph,
        value=str(result.value) if exact else f">{params.cap}",
        certificate=payload["certificate"] or {},
        statistics={**payload["statistics"], "refuted": payload["refuted"], "strategy": payload["strategy"]},
    )


def tetraflow_sync(params: TetraFlowParams) -> ResultDocument:
    """搜索 T-流；找到时附带 T-流和由它得到的 4-覆盖"""
    g = load_graph(params.graph)
    T = Tetrahedron()
    flow, stats = find_tetra_flow(g, T)
    if flow is None:
        return make_document(
            "tetraflow", params, verdict=Verdict.NONE.value, passed=False,
            graph=params.graph, value="pi>=5", statistics=stats.to_dict(),
        )
    certificate = tetra_flow_certificate(T, flow)
    certificate["cover"] = flow_to_cover(g, flow, T).to_dict()
    return make_document(
        "tetraflow", params, verdict=Verdict.FOUND.value, graph=params.graph,
        value="pi<=4", certificate=certificate, statistics=stats.to_dict(),
    )


def transitions_sync(params: TransitionsParams) -> ResultDocument:
    """计算 (2,2)-极子的转移关系及其分类"""
    x = load_dipole(params.dipole)
    T = Tetrahedron()
    result = transition_relation(x, T, params.threads)
    certificate = {"kind": "transitions", **result.to_dict(include_pairs=True)}
    certificate["classification"] = {
        "admissible": result.shapes <= A,
        "decollineator": is_decollineator(x, T, params.threads),
        "deangulator": is_deangulator(x, T, params.threads),
        "heavy": is_heavy(x, T, params.threads),
    }
    return make_document(
        "transitions", params,
        verdict=Verdict.PASS.value if result.shapes <= A else Verdict.FAIL.value,
        passed=result.shapes <= A,
        graph=params.dipole,
        value=", ".join(format_relation(result.shapes)),
        certificate=certificate,
        statistics=result.stats.to_dict(),
    )


def cfn_sync(params: CfnParams) -> ResultDocument:
    """计算相对于 q_max 的圆流数"""
    g = load_graph(params.graph)
    result = circular_flow_number(g, params.q_max, params.threads)
    payload = result.to_dict()
    nodes = result.witness.stats.nodes + sum(r.stats.nodes for r in result.refusals)
    return make_document(
        "cfn", params, verdict=Verdict.FOUND.value, graph=params.graph,
        value=format_fraction(result.value),
        certificate={"kind": "cfn", **payload},
        statistics={"nodes": nodes, "candidates": len(result.refusals) + 1},
    )


def totals_sync(params: TotalsParams) -> ResultDocument:
    """模 (p,q)-流通过偶极子的全部可实现总流"""
    x = load_dipole(params.dipole)
    result = modular_totals_through(x, params.p, params.q, params.threads)
    payload = result.to_dict()
    return make_document(
        "totals", params, verdict=Verdict.FOUND.value if result.totals else Verdict.NONE.value,
        passed=bool(result.totals),
        graph=params.dipole,
        value="{" + ", ".join(format_fraction(t) for t in result.totals) + "}",
        certificate={"kind": "totals", "p": payload["p"], "q": payload["q"], "totals": payload["totals"],
                     "input_pairs": payload["input_pairs"]},
        statistics=payload["statistics"],
    )


# ============================================================================
# 命令注册
# ============================================================================

def _pmi(args) -> ResultDocument:
    params = PmiParams(graph=args.graph, cap=args.cap, strategy=PmiStrategy(args.strategy),
                       threads=args.threads, seed=args.seed)
    return run_command("pmi", params, pmi_sync)


def _tetraflow(args) -> ResultDocument:
    params = TetraFlowParams(graph=args.graph, threads=args.threads, seed=args.seed)
    return run_command("tetraflow", params, tetraflow_sync)


def _transitions(args) -> ResultDocument:
    params = TransitionsParams(dipole=args.dipole, threads=args.threads, seed=args.seed)
    return run_command("transitions", params, transitions_sync)


def _cfn(args) -> ResultDocument:
    params = CfnParams(graph=args.graph, q_max=args.qmax, threads=args.threads, seed=args.seed)
    return run_command("cfn", params, cfn_sync)


def _totals(args) -> ResultDocument:
    params = TotalsParams(dipole=args.dipole, p=args.p, q=args.q, threads=args.threads, seed=args.seed)
    return run_command("totals", params, totals_sync)


def register_analysis_tools(subparsers):
    """注册分析命令"""
    parser = subparsers.add_parser("pmi", help="计算完美匹配指数")
    parser.add_argument("graph", help="内置图名称或 .g6 / .mp 文件")
    parser.add_argument("--cap", type=int, default=config.search.PMI_CAP, help="搜索上限 (默认: %(default)s)")
    parser.add_argument("--strategy", choices=[s.value for s in PmiStrategy], default=PmiStrategy.AUTO.value)
    parser.set_defaults(handler=_pmi)

    parser = subparsers.add_parser("tetraflow", help="搜索四面体流 (π ≤ 4 的判定)")
    parser.add_argument("graph", help="内置图名称或 .g6 / .mp 文件")
    parser.set_defaults(handler=_tetraflow)

    parser = subparsers.add_parser("transitions", help="计算 (2,2)-极子的转移关系")
    parser.add_argument("dipole", help="d_ps、q_ps、basic、pass-through 或偶极子文档")
    parser.set_defaults(handler=_transitions)

    parser = subparsers.add_parser("cfn", help="计算圆流数")
    parser.add_argument("graph", help="内置图名称或 .g6 / .mp 文件")
    parser.add_argument("--qmax", type=int, default=config.circular.Q_MAX, help="分母上限 (默认: %(default)s)")
    parser.set_defaults(handler=_cfn)

    parser = subparsers.add_parser("totals", help="模 (p,q)-流通过偶极子的总流")
    parser.add_argument("dipole", help="d_ps、q_ps、basic、pass-through 或偶极子文档")
    parser.add_argument("-p", type=int, required=True)
    parser.add_argument("-q", type=int, required=True)
    parser.set_defaults(handler=_totals)
