from fractions import Fraction

import pytest

from snark_toolkit.exceptions import BridgeError, FlowError, InvalidFlowParametersError
from snark_toolkit.flows.circular import (
    ModularFlowSearch,
    circular_flow_number,
    farey_candidates,
    has_circular_pq_flow,
    lift_modular_flow,
    modular_totals_through,
    refute_9_2_flow_on_superposition,
    residue_representative,
    search_integer_pq_flow,
    verify_flow,
)
from snark_toolkit.matching.census import small_cubic_census
from snark_toolkit.multipole.builders import k4, petersen, prism, theta
from snark_toolkit.multipole.core import Multipole
from snark_toolkit.superposition.construction import basic_plan, basic_superedge, build_d_ps, build_q_ps, heavy_superposition
from snark_toolkit.types import FlowUnits, FlowValuation

BRIDGED_PAIRS = [
    (0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (0, 4),
    (5, 6), (5, 7), (6, 7), (6, 8), (7, 8), (5, 9),
    (3, 4), (8, 9), (4, 9),
]


# ============================================================================
# 单个 (p,q) 判定
# ============================================================================

@pytest.mark.parametrize("builder, present, absent", [
    (theta, (3, 1), (5, 2)),
    (k4, (4, 1), (7, 2)),
    (petersen, (5, 1), (9, 2)),
])
def test_pq_decisions(builder, present, absent):
    g = builder()
    found = has_circular_pq_flow(g, *present)
    assert found.found
    assert verify_flow(g, found.witness, *present)
    assert found.witness.units == FlowUnits.INTEGER

    refused = has_circular_pq_flow(g, *absent)
    assert not refused.found
    assert refused.witness is None
    assert refused.stats.nodes > 0
    assert refused.to_dict()["verdict"] == "none"


@pytest.mark.parametrize("p, q", [(13, 3), (14, 3)])
def test_petersen_refuses_thirds_below_five(p, q):
    assert not has_circular_pq_flow(petersen(), p, q).found


def test_flow_existence_is_monotone():
    g = theta()
    assert has_circular_pq_flow(g, 7, 2).found
    assert has_circular_pq_flow(g, 4, 1).found
    assert not has_circular_pq_flow(g, 2, 1).found


def test_flow_existence_is_monotone_on_census():
    candidates = farey_candidates(3, high=Fraction(5))
    for g in small_cubic_census(8):
        decisions = [has_circular_pq_flow(g, p, q).found for p, q in candidates]
        first = decisions.index(True)
        assert all(decisions[first:])


@pytest.mark.parametrize("builder, p, q, k", [
    (theta, 3, 1, 2), (theta, 5, 2, 3), (k4, 4, 1, 3), (k4, 7, 2, 2),
])
def test_scaled_parameters_give_the_same_decision(builder, p, q, k):
    g = builder()
    scaled = has_circular_pq_flow(g, k * p, k * q)
    assert scaled.found == has_circular_pq_flow(g, p, q).found
    assert (scaled.p, scaled.q) == (p, q)
    if scaled.found:
        assert verify_flow(g, scaled.witness, k * p, k * q)


@pytest.mark.parametrize("builder, p, q", [
    (theta, 3, 1), (theta, 5, 2), (k4, 7, 2), (k4, 4, 1), (prism, 7, 2), (petersen, 9, 2),
])
def test_integer_search_agrees_with_modular_search(builder, p, q):
    g = builder()
    direct, _ = search_integer_pq_flow(g, p, q)
    assert (direct is not None) == has_circular_pq_flow(g, p, q).found
    if direct is not None:
        values = [Fraction(v, q) for v in direct]
        assert verify_flow(g, values, p, q)
        assert verify_flow(g, values, p, q, modular=True)


def test_parameter_validation():
    for p, q in [(3, 2), (6, 4), (0, 1), (5, 0)]:
        with pytest.raises(InvalidFlowParametersError):
            has_circular_pq_flow(theta(), p, q)


def test_bridged_graph_is_rejected():
    g = Multipole.from_edge_list(10, BRIDGED_PAIRS)
    with pytest.raises(BridgeError):
        has_circular_pq_flow(g, 5, 1)
    with pytest.raises(BridgeError):
        circular_flow_number(g)


# ============================================================================
# 校验与提升
# ============================================================================

def test_verify_flow_on_theta():
    g = theta()
    assert verify_flow(g, [1, 1, -2], 3, 1)
    assert not verify_flow(g, [1, 1, 1], 3, 1)
    assert not verify_flow(g, [1, 1, -2], 5, 2)
    assert not verify_flow(g, [1, -1], 3, 1)
    assert not verify_flow(g, [0, 1, -1], 3, 1)
    assert verify_flow(g, [1, 1, 1], 3, 1, modular=True)
    assert not verify_flow(g, FlowValuation((3, 3, -6), 8, 3, FlowUnits.INTEGER), 8, 3)
    assert verify_flow(g, FlowValuation((3, 3, -6), 9, 3, FlowUnits.INTEGER), 9, 3)


def test_modular_lift_on_theta():
    g = theta()
    lifted = lift_modular_flow(g, (1, 1, 1), 3)
    assert sorted(lifted) == [-2, 1, 1]
    assert verify_flow(g, lifted, 3, 1)
    with pytest.raises(FlowError):
        lift_modular_flow(g, (1, 1, 2), 3)


def test_residue_representative():
    assert residue_representative(5, 9) == -4
    assert residue_representative(4, 9) == 4
    assert residue_representative(9, 9) == 0
    assert residue_representative(3, 6) == 3


# ============================================================================
# 圆流数
# ============================================================================

def test_farey_candidates():
    assert farey_candidates(1) == [(2, 1), (3, 1), (4, 1), (5, 1), (6, 1)]
    halves = farey_candidates(2)
    assert (9, 2) in halves and (4, 2) not in halves
    ratios = [Fraction(p, q) for p, q in farey_candidates(3)]
    assert ratios == sorted(ratios)
    assert Fraction(14, 3) in ratios


@pytest.mark.parametrize("builder, value", [(theta, 3), (k4, 4)])
def test_circular_flow_number_small(builder, value):
    result = circular_flow_number(builder(), q_max=3)
    assert result.value == value
    assert all(r.r < value for r in result.refusals)
    assert result.to_dict()["value"] == str(value)


def test_circular_flow_number_is_thread_independent():
    single = circular_flow_number(k4(), q_max=2, threads=1)
    double = circular_flow_number(k4(), q_max=2, threads=2)
    assert single.value == double.value
    assert [(r.p, r.q) for r in single.refusals] == [(r.p, r.q) for r in double.refusals]


@pytest.mark.slow
def test_circular_flow_number_of_petersen():
    result = circular_flow_number(petersen(), q_max=3)
    assert result.value == 5
    refused = {(r.p, r.q) for r in result.refusals}
    assert {(9, 2), (13, 3), (14, 3)} <= refused


# ============================================================================
# 偶极子总流
# ============================================================================

def test_d_ps_totals_lie_in_open_unit_interval():
    result = modular_totals_through(build_d_ps(), 9, 2)
    assert result.totals
    assert all(-1 < t < 1 for t in result.totals)
    assert result.stats.queries > 0


def test_q_ps_totals_avoid_zero():
    result = modular_totals_through(build_q_ps(), 9, 2)
    assert result.totals
    assert Fraction(0) not in result.totals


def test_totals_are_symmetric():
    result = modular_totals_through(build_d_ps(), 9, 2)
    assert {-t for t in result.totals} == set(result.totals)


@pytest.mark.parametrize("builder", [build_d_ps, build_q_ps])
def test_dipole_totals_close_under_kirchhoff(builder):
    d = builder()
    p, q = 9, 2
    flows = list(ModularFlowSearch(d.base, p, q).solutions(limit=40))
    assert flows
    for values in flows:
        inward = sum(values[e] for e in d.input_edges())
        outward = -sum(values[e] for e in d.output_edges())
        assert (inward - outward) % p == 0


@pytest.mark.slow
def test_basic_superedge_totals_are_half_units():
    result = modular_totals_through(basic_superedge(), 9, 2)
    assert set(result.totals) <= {Fraction(1, 2), Fraction(-1, 2)}


@pytest.mark.slow
def test_refute_9_2_flow_on_theta_superposition():
    plan = basic_plan(theta())
    result = heavy_superposition(plan, check_heavy=False)
    report = refute_9_2_flow_on_superposition(result.graph, plan)
    assert report["verdict"] == "pass"
    assert report["claim"] == "phi_c>9/2"
    assert "0" not in report["possible_vertex_sums"]
