"""
verify-paper 验收流水线

依次运行 11 项验收检查，每项给出一个 CheckResult。details 只包含确定性数据，
计时单独记录在 duration 中，因此不同并行度下的结果可以逐字节比较。
"""

import json
from collections import Counter
from fractions import Fraction
from functools import lru_cache
from typing import Any, Callable, Dict, List, Sequence, Tuple

from ..config import config
from ..flows.circular import (
    circular_flow_number,
    has_circular_pq_flow,
    modular_totals_through,
    refute_9_2_flow_on_superposition,
    verify_flow,
)
from ..flows.templates import construct_14_3_flow, derive_superedge_templates
from ..flows.tetra import find_tetra_flow
from ..geometry.tetrahedron import Tetrahedron
from ..matching.census import small_cubic_census
from ..matching.cover import cover_flow_counts, cover_to_flow, flow_to_cover, perfect_matching_index
from ..monitoring.logger import log_with_context, setup_logger
from ..multipole.builders import get_builtin_graph, petersen
from ..multipole.core import Multipole
from ..multipole.invariants import snark_report
from ..superposition.certificate import build_heaviness_certificate, certify_pmi_at_least_5
from ..superposition.construction import (
    Superposition,
    basic_plan,
    basic_superedge,
    build_d_ps,
    build_q_ps,
    heavy_superposition,
)
from ..transitions.analysis import (
    closure_checks,
    is_deangulator,
    is_decollineator,
    is_heavy,
    random_admissibility_suite,
    transition_relation,
)
from ..transitions.relations import D, Q, R, compose_relations, format_relation
from ..types import (
    CheckResult,
    CoverCertificate,
    PmiStrategy,
    ResultDocument,
    Shape,
    Verdict,
    VerifyPaperParams,
    format_fraction,
)
from ..utils import Timer, parallel_map
from .common import make_document, run_command

logger = setup_logger(__name__)

CENSUS_COUNTS = {4: 1, 6: 2, 8: 5, 10: 18}
SUPERPOSITION_VERTICES = {"theta": 82, "k4": 164}

QUICK_CRITERIA = (1, 2, 7)
FAST_CRITERIA = (1, 2, 3, 4, 5, 6, 7, 8, 9)
ALL_CRITERIA = FAST_CRITERIA + (10, 11)


@lru_cache(maxsize=None)
def _superposition(base: str) -> Superposition:
    return heavy_superposition(basic_plan(get_builtin_graph(base)), check_heavy=False)


# ============================================================================
# 各项检查
# ============================================================================

def check_small_pmi(threads: int, seed: int) -> Dict[str, Any]:
    """K4、棱柱、K3,3 的 π 为 3，Petersen 图为 5"""
    expected = {"k4": 3, "prism": 3, "k33": 3, "petersen": 5}
    values = {}
    refuted: Dict[str, int] = {}
    cover_size = None
    for name in expected:
        result = perfect_matching_index(get_builtin_graph(name), cap=5)
        values[name] = result.value
        if name == "petersen":
            refuted = {str(k): nodes for k, nodes in sorted(result.refuted.items())}
            cover_size = result.certificate.size if result.certificate else None
    return {
        "passed": values == expected and cover_size == 5 and "4" in refuted,
        "values": values,
        "petersen_cover_size": cover_size,
        "petersen_refuted": refuted,
    }


def _census_item(g: Multipole) -> Dict[str, Any]:
    T = Tetrahedron()
    pmi = perfect_matching_index(g, cap=4, strategy=PmiStrategy.COVER)
    at_most_4 = pmi.verdict == Verdict.EXACT
    flow, _ = find_tetra_flow(g, T)
    roundtrip = True
    if flow is not None:
        roundtrip &= cover_to_flow(g, flow_to_cover(g, flow, T), T) == tuple(flow)
    if at_most_4:
        matchings = pmi.certificate.matchings
        padded = CoverCertificate(matchings + (matchings[0],) * (4 - len(matchings)))
        roundtrip &= flow_to_cover(g, cover_to_flow(g, padded, T), T) == padded
    counts = cover_flow_counts(g, T) if g.num_vertices <= 6 else None
    return {
        "vertices": g.num_vertices,
        "agrees": at_most_4 == (flow is not None),
        "roundtrip": roundtrip,
        "counts": counts,
    }


def summarize_census(items: Sequence[Dict[str, Any]]) -> Dict[str, Any]:
    """
    汇总普查结果。

    有序覆盖数与 T-流数只并列报告，不要求相等；通过条件只看普查规模、
    存在性等价和两个互逆转换。
    """
    counts = dict(sorted(Counter(item["vertices"] for item in items).items()))
    disagreements = [i for i, item in enumerate(items) if not item["agrees"]]
    roundtrip_failures = [i for i, item in enumerate(items) if not item["roundtrip"]]
    side_by_side = [
        {"index": i, "vertices": item["vertices"], **item["counts"],
         "equal": item["counts"]["ordered_covers"] == item["counts"]["tetra_flows"]}
        for i, item in enumerate(items) if item["counts"] is not None
    ]
    return {
        "passed": counts == CENSUS_COUNTS and not (disagreements or roundtrip_failures),
        "census": {str(n): c for n, c in counts.items()},
        "disagreements": disagreements,
        "roundtrip_failures": roundtrip_failures,
        "cover_flow_counts": side_by_side,
    }


def check_cover_flow_equivalence(threads: int, seed: int) -> Dict[str, Any]:
    """普查中 π ≤ 4 当且仅当存在 T-流，并检查覆盖与流的互逆转换"""
    return summarize_census(parallel_map(_census_item, small_cubic_census(10), threads))


def check_random_admissibility(threads: int, seed: int) -> Dict[str, Any]:
    """随机 (2,2)-极子都满足 T(X) ⊆ A"""
    return random_admissibility_suite(
        count=config.search.RANDOM_DIPOLE_COUNT,
        seed=seed,
        max_vertices=config.search.RANDOM_DIPOLE_MAX_VERTICES,
        threads=threads,
    )


def check_petersen_dipoles(threads: int, seed: int) -> Dict[str, Any]:
    """T(D_Ps) = D，T(Q_Ps) = Q，T(D_Ps∘Q_Ps∘D_Ps) = R"""
    details: Dict[str, Any] = {"passed": True}
    for name, dipole, expected in (
        ("d_ps", build_d_ps(), D),
        ("q_ps", build_q_ps(), Q),
        ("basic", basic_superedge(), R),
    ):
        result = transition_relation(dipole, threads=threads)
        details[name] = {
            "shapes": format_relation(result.shapes),
            "pair_count": len(result.pairs),
            "equal": result.shapes == expected,
        }
        details["passed"] &= result.shapes == expected
    return details


def check_relation_algebra(threads: int, seed: int) -> Dict[str, Any]:
    """D∘Q∘D = R，Q 满足去角子判据，基本超边是重去共线子"""
    composed = compose_relations(compose_relations(D, Q), D)
    q_ps, basic = build_q_ps(), basic_superedge()
    details = {
        "dqd_equals_r": composed == R,
        "q_has_no_ang_ang": (Shape.ANG, Shape.ANG) not in Q,
        "q_ps_deangulator": is_deangulator(q_ps, threads=threads),
        "basic_heavy": is_heavy(basic, threads=threads),
        "basic_decollineator": is_decollineator(basic, threads=threads),
        "closure": closure_checks(build_d_ps(), q_ps, build_d_ps(), threads=threads),
    }
    details["passed"] = all(v for k, v in details.items() if k != "closure") and all(details["closure"].values())
    return details


def check_superposition(base: str, threads: int) -> Dict[str, Any]:
    """基本重叠加是非平凡 snark 且 π ≥ 5"""
    superposition = _superposition(base)
    plan, graph = superposition.plan, superposition.graph
    report = snark_report(graph)
    heaviness = build_heaviness_certificate(plan, threads=threads)
    pi = certify_pmi_at_least_5(graph, plan, heaviness)
    passed = (
        graph.num_vertices == SUPERPOSITION_VERTICES[base]
        and report["girth"] == 5
        and report["cyclically_4_edge_connected"]
        and not report["three_edge_colourable"]
        and pi["verdict"] == Verdict.PASS.value
    )
    return {
        "passed": passed,
        "report": report,
        "superposition": {"plan": f"basic:{base}", "vertices": graph.num_vertices, "pi_at_least_5": pi},
    }


def check_petersen_circular(threads: int, seed: int) -> Dict[str, Any]:
    """Petersen 图有 (5,1)-流，没有 (9,2)、(13,3)、(14,3)-流，且 q ≤ 3 时 Φ_c = 5"""
    g = petersen()
    decisions = {f"{p}/{q}": has_circular_pq_flow(g, p, q).found for p, q in ((5, 1), (9, 2), (13, 3), (14, 3))}
    cfn = circular_flow_number(g, 3, threads)
    expected = {"5/1": True, "9/2": False, "13/3": False, "14/3": False}
    return {
        "passed": decisions == expected and cfn.value == 5,
        "decisions": decisions,
        "cfn": format_fraction(cfn.value),
    }


def check_lower_bound(base: str, threads: int) -> Dict[str, Any]:
    """(9,2) 总流的区间性质与 Φ_c > 9/2"""
    d_totals = modular_totals_through(build_d_ps(), 9, 2, threads).totals
    q_totals = modular_totals_through(build_q_ps(), 9, 2, threads).totals
    basic_totals = modular_totals_through(basic_superedge(), 9, 2, threads).totals
    superposition = _superposition(base)
    refutation = refute_9_2_flow_on_superposition(superposition.graph, superposition.plan, threads)
    half = {Fraction(1, 2), Fraction(-1, 2)}
    details = {
        "d_ps_within_unit": all(-1 < t < 1 for t in d_totals),
        "q_ps_avoids_zero": Fraction(0) not in q_totals,
        "basic_half_only": set(basic_totals) <= half,
        "totals": {
            "d_ps": [format_fraction(t) for t in d_totals],
            "q_ps": [format_fraction(t) for t in q_totals],
            "basic": [format_fraction(t) for t in basic_totals],
        },
        "superposition": {"plan": f"basic:{base}", "vertices": superposition.graph.num_vertices,
                          "phi_c_gt_9_2": refutation},
    }
    details["passed"] = (
        details["d_ps_within_unit"] and details["q_ps_avoids_zero"] and details["basic_half_only"]
        and refutation["verdict"] == Verdict.PASS.value
    )
    return details


def check_upper_bound(base: str, threads: int) -> Dict[str, Any]:
    """超边模板存在，铺放后得到值在 [1, 11/3] 中的 (14,3)-流"""
    templates = derive_superedge_templates(threads=threads)
    template_range = all(
        3 <= abs(v) <= templates.max_value for t in templates.templates for v in t.values
    )
    superposition = _superposition(base)
    flow = construct_14_3_flow(superposition, templates=templates)
    r = Fraction(flow.p, flow.q)
    value_range = all(1 <= abs(v) <= r - 1 for v in flow.values)
    return {
        "passed": template_range and value_range and r == Fraction(14, 3)
                  and verify_flow(superposition.graph, flow, 14, 3),
        "templates": templates.to_dict(),
        "superposition": {"plan": f"basic:{base}", "vertices": superposition.graph.num_vertices,
                          "flow_14_3": flow.to_dict()},
    }


def check_second_instance(threads: int, seed: int) -> Dict[str, Any]:
    """以 K4 为基图重复重叠加、下界和上界的检查"""
    parts = {
        "superposition": check_superposition("k4", threads),
        "lower_bound": check_lower_bound("k4", threads),
        "upper_bound": check_upper_bound("k4", threads),
    }
    return {
        "passed": all(part["passed"] for part in parts.values()),
        "parts": {name: {"passed": part["passed"]} for name, part in parts.items()},
        "superposition": {
            "plan": "basic:k4",
            **parts["superposition"]["superposition"],
            "phi_c_gt_9_2": parts["lower_bound"]["superposition"]["phi_c_gt_9_2"],
            "flow_14_3": parts["upper_bound"]["superposition"]["flow_14_3"],
        },
    }


CRITERIA: Dict[int, Tuple[str, Callable[[int, int], Dict[str, Any]]]] = {
    1: ("pi-small-graphs", check_small_pmi),
    2: ("cover-flow-equivalence", check_cover_flow_equivalence),
    3: ("random-admissibility", check_random_admissibility),
    4: ("petersen-dipole-transitions", check_petersen_dipoles),
    5: ("relation-algebra", check_relation_algebra),
    6: ("superposition-theta", lambda threads, seed: check_superposition("theta", threads)),
    7: ("petersen-circular-flow", check_petersen_circular),
    8: ("lower-bound-9/2", lambda threads, seed: check_lower_bound("theta", threads)),
    9: ("upper-bound-14/3", lambda threads, seed: check_upper_bound("theta", threads)),
    10: ("second-instance-k4", check_second_instance),
}


# ============================================================================
# 流水线
# ============================================================================

def run_criterion(number: int, threads: int, seed: int) -> CheckResult:
    name, body = CRITERIA[number]
    timer = Timer()
    timer.start()
    with log_with_context(logger, step=f"criterion-{number}") as log:
        log.info(f"开始检查 {name}")
        try:
            details = body(threads, seed)
        except Exception as e:
            log.error(f"检查 {name} 出错: {e}")
            details = {"passed": False, "error": str(e)}
        passed = bool(details.pop("passed"))
        log.info(f"检查 {name}: {'通过' if passed else '失败'}")
    return CheckResult(name=f"{number}:{name}", passed=passed, details=details, duration=round(timer.stop(), 3))


def _fingerprint(check: CheckResult) -> str:
    return json.dumps({"passed": check.passed, "details": check.details}, sort_keys=True, default=str)


def check_determinism(results: Sequence[CheckResult], threads: int, seed: int) -> CheckResult:
    """用另一个并行度重新运行已完成的检查，比较结果"""
    other = 1 if threads > 1 else 2
    timer = Timer()
    timer.start()
    differing = []
    for check in results:
        number = int(check.name.split(":", 1)[0])
        rerun = run_criterion(number, other, seed)
        if _fingerprint(rerun) != _fingerprint(check):
            differing.append(check.name)
    return CheckResult(
        name="11:determinism",
        passed=not differing,
        details={"compared": [c.name for c in results], "differing": differing, "threads": sorted({threads, other})},
        duration=round(timer.stop(), 3),
    )


def run_pipeline(criteria: Sequence[int], threads: int, seed: int) -> List[CheckResult]:
    """按编号顺序运行所选检查；11 号检查比较前面所有检查的复算结果"""
    results = [run_criterion(n, threads, seed) for n in sorted(criteria) if n in CRITERIA]
    if 11 in criteria:
        results.append(check_determinism(results, threads, seed))
    return results


def select_criteria(quick: bool = False, fast: bool = False) -> Tuple[int, ...]:
    """默认运行全部 11 项；fast 跳过 K4 实例和确定性比较，quick 只运行 1、2、7"""
    if quick:
        return QUICK_CRITERIA
    return FAST_CRITERIA if fast else ALL_CRITERIA


def verify_paper_sync(params: VerifyPaperParams) -> ResultDocument:
    """
    运行验收流水线

    参数:
        params: 默认运行全部检查；quick 只运行快速检查，fast 跳过 K4 实例和确定性检查

    返回:
        每项检查一个 CheckResult 的汇总文档
    """
    seed = config.search.SEED if params.seed is None else params.seed
    checks = run_pipeline(select_criteria(params.quick, params.fast), params.threads, seed)
    passed = all(check.passed for check in checks)
    passed_count = sum(1 for check in checks if check.passed)
    return make_document(
        "verify-paper", params,
        verdict=(Verdict.PASS if passed else Verdict.FAIL).value,
        passed=passed,
        value=f"{passed_count}/{len(checks)}",
        checks=checks,
    )


def _verify_paper(args) -> ResultDocument:
    params = VerifyPaperParams(quick=args.quick, fast=args.fast, threads=args.threads, seed=args.seed)
    return run_command("verify-paper", params, verify_paper_sync)


def register_acceptance_tools(subparsers):
    """注册验收流水线命令"""
    parser = subparsers.add_parser("verify-paper", help="运行完整的验收流水线")
    mode = parser.add_mutually_exclusive_group()
    mode.add_argument("--quick", action="store_true", help=f"只运行检查 {', '.join(map(str, QUICK_CRITERIA))}")
    mode.add_argument("--fast", action="store_true", help="跳过 K4 实例 (10) 和确定性比较 (11)")
    parser.set_defaults(handler=_verify_paper)
