import pytest

from snark_toolkit.exceptions import CertificateError, HypothesisError, NotCubicError
from snark_toolkit.flows.circular import refute_9_2_flow_on_superposition
from snark_toolkit.flows.tetra import find_tetra_flow
from snark_toolkit.multipole.builders import claw, k4, pass_through_dipole, prism, theta
from snark_toolkit.multipole.core import Multipole, disjoint_union
from snark_toolkit.multipole.invariants import girth
from snark_toolkit.superposition.certificate import (
    HeavinessCertificate,
    SuperedgeRecord,
    build_heaviness_certificate,
    certify_pmi_at_least_5,
)
from snark_toolkit.superposition.construction import (
    CANONICAL_ATTACHMENT,
    SuperpositionPlan,
    basic_plan,
    basic_superedge,
    build_d_ps,
    build_q_ps,
    heavy_superposition,
    realizes_plan,
)


def test_petersen_dipole_sizes():
    assert build_d_ps().num_vertices == 8
    assert build_q_ps().num_vertices == 10
    assert basic_superedge().num_vertices == 26
    assert basic_superedge().arity == 2


@pytest.mark.parametrize("base, vertices", [(theta(), 82), (k4(), 164)])
def test_basic_plan_vertex_count(base, vertices):
    plan = basic_plan(base)
    assert plan.expected_vertices() == vertices
    result = heavy_superposition(plan)
    assert result.graph.num_vertices == vertices
    assert result.graph.is_graph
    assert result.graph.num_edges == 3 * vertices // 2


def test_superposition_layout():
    plan = basic_plan(theta())
    result = heavy_superposition(plan, check_heavy=False)
    assert result.offsets == (4, 30, 56)
    assert all(len(local) == basic_superedge().base.num_edges for local in result.provenance)
    flat = [index for local in result.provenance for index in local]
    assert sorted(flat) == list(range(result.graph.num_edges))


def test_superposition_has_girth_five():
    result = heavy_superposition(basic_plan(theta()), check_heavy=False)
    assert girth(result.graph) == 5


def test_plan_validation():
    x = basic_superedge()
    with pytest.raises(HypothesisError):
        SuperpositionPlan(theta(), (x, x), ("basic",) * 2, (CANONICAL_ATTACHMENT,) * 2)
    with pytest.raises(HypothesisError):
        SuperpositionPlan(theta(), (x,) * 3, ("basic",) * 3, ((0, 0, 0, 1),) * 3)
    with pytest.raises(NotCubicError):
        SuperpositionPlan(claw(), (), (), ())


def test_light_superedge_is_rejected():
    x = pass_through_dipole()
    plan = SuperpositionPlan(theta(), (x,) * 3, ("pass",) * 3, (CANONICAL_ATTACHMENT,) * 3)
    with pytest.raises(HypothesisError):
        heavy_superposition(plan)


def test_heaviness_certificate_on_theta(T):
    plan = basic_plan(theta())
    result = heavy_superposition(plan)
    certificate = build_heaviness_certificate(plan, T)
    record = certificate.records["basic"]
    assert record.heavy
    assert record.within_r
    assert str(certificate.ratio) == "4/3"

    report = certify_pmi_at_least_5(result.graph, plan, certificate, T)
    assert report["verdict"] == "pass"
    assert report["claim"] == "pi>=5"
    assert all(step["passed"] for step in report["steps"])


def test_certificate_rejections(T):
    plan = basic_plan(theta())
    graph = heavy_superposition(plan, check_heavy=False).graph

    with pytest.raises(CertificateError):
        certify_pmi_at_least_5(graph, plan, HeavinessCertificate({}, 2, 3), T)

    light = SuperedgeRecord("basic", 26, False, True, (), 0)
    with pytest.raises(CertificateError):
        certify_pmi_at_least_5(graph, plan, HeavinessCertificate({"basic": light}, 2, 3), T)

    heavy = SuperedgeRecord("basic", 26, True, True, (), 0)
    with pytest.raises(CertificateError):
        certify_pmi_at_least_5(graph, plan, HeavinessCertificate({"basic": heavy}, 4, 6), T)

    other = heavy_superposition(basic_plan(k4()), check_heavy=False).graph
    with pytest.raises(CertificateError):
        certify_pmi_at_least_5(other, plan, HeavinessCertificate({"basic": heavy}, 2, 3), T)

    with pytest.raises(CertificateError):
        certify_pmi_at_least_5(_same_size_other_graph(), plan, HeavinessCertificate({"basic": heavy}, 2, 3), T)


@pytest.mark.slow
def test_superposition_has_no_tetra_flow(T):
    result = heavy_superposition(basic_plan(theta()))
    flow, stats = find_tetra_flow(result.graph, T)
    assert stats.nodes > 0
    assert flow is None


def _same_size_other_graph() -> Multipole:
    # 82 个顶点、123 条边，但围长为 3
    g = prism()
    for _ in range(19):
        g = disjoint_union(g, k4())
    return g


def test_graph_must_realize_the_plan():
    plan = basic_plan(theta())
    graph = heavy_superposition(plan, check_heavy=False).graph
    assert realizes_plan(graph, plan)
    other = _same_size_other_graph()
    assert other.num_vertices == graph.num_vertices
    assert not realizes_plan(other, plan)
    with pytest.raises(CertificateError):
        refute_9_2_flow_on_superposition(other, plan)


@pytest.mark.slow
def test_relabelled_superposition_realizes_the_plan():
    plan = basic_plan(theta())
    graph = heavy_superposition(plan, check_heavy=False).graph
    shuffled = Multipole(graph.num_vertices, tuple(reversed(graph.edges)))
    assert realizes_plan(shuffled, plan)
