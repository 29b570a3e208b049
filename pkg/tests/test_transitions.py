import random

import pytest

from snark_toolkit.exceptions import ConnectorMismatchError, FormatError, HypothesisError
from snark_toolkit.matching.census import small_cubic_census
from snark_toolkit.multipole.builders import k4, pass_through_dipole, petersen, prism, theta
from snark_toolkit.multipole.core import compose_all, sever
from snark_toolkit.multipole.generators import random_dipoles
from snark_toolkit.multipole.isomorphism import are_isomorphic
from snark_toolkit.superposition.construction import basic_superedge, build_d_ps, build_q_ps
from snark_toolkit.transitions.analysis import (
    admissibility_check,
    closure_checks,
    composition_report,
    decollineator_to_graph,
    harvest_decollineators,
    is_deangulator,
    is_decollineator,
    is_heavy,
    q_dipole_from,
    random_admissibility_suite,
    heaviness_equivalence,
    transition_relation,
)
from snark_toolkit.transitions.relations import (
    A,
    D,
    DEANGULATOR,
    Q,
    R,
    compose_relations,
    format_relation,
    parse_relation,
)
from snark_toolkit.types import SeverPolicy, Shape


# ============================================================================
# 关系代数
# ============================================================================

def test_named_relations():
    assert len(A) == 8
    assert D == A - {(Shape.HL, Shape.HL), (Shape.LS, Shape.LS)}
    assert Q <= A
    assert Q <= DEANGULATOR
    assert R <= D


def test_relation_composition():
    assert compose_relations(compose_relations(D, Q), D) == R
    assert compose_relations(frozenset(), A) == frozenset()
    assert compose_relations(A, A) == A


def test_relation_tokens_round_trip():
    tokens = format_relation(R)
    assert "ang->ang" in tokens
    assert parse_relation(tokens) == R
    with pytest.raises(FormatError):
        parse_relation(["ls=>ang"])
    with pytest.raises(FormatError):
        parse_relation(["ls->xx"])


# ============================================================================
# Petersen 偶极子
# ============================================================================

def test_d_ps_relation(T):
    result = transition_relation(build_d_ps(), T)
    assert result.shapes == D
    assert is_decollineator(build_d_ps(), T)
    assert not is_deangulator(build_d_ps(), T)
    assert admissibility_check(build_d_ps(), T)


def test_q_ps_relation(T):
    q = build_q_ps()
    assert q.num_vertices == 10
    assert q.base.dangling_count == 4
    result = transition_relation(q, T)
    assert result.shapes == Q
    assert result.shapes < A
    assert is_deangulator(q, T)
    assert not is_decollineator(q, T)


def test_basic_superedge_relation(T):
    x = basic_superedge()
    assert x.num_vertices == 26
    assert transition_relation(x, T).shapes == R
    assert is_heavy(x, T)
    assert is_decollineator(x, T)


def test_pass_through_dipole_is_neither_heavy_nor_decollineator(T):
    x = pass_through_dipole()
    assert not is_decollineator(x, T)
    assert not is_heavy(x, T)
    assert admissibility_check(x, T)


def test_pair_level_transitions_are_archived(T):
    result = transition_relation(build_d_ps(), T)
    payload = result.to_dict()
    assert payload["pair_count"] == len(result.pairs)
    assert all(len(row) == 4 for row in payload["pairs"])
    assert payload["shapes"] == format_relation(D)


def test_relation_requires_two_two_pole(T):
    single = sever(theta(), [0], SeverPolicy.SPLIT)
    with pytest.raises(ConnectorMismatchError):
        transition_relation(single, T)


def test_heaviness_is_invariant_under_connector_swaps(T):
    d = build_d_ps()
    swapped = type(d)(d.base, d.inputs[::-1], d.outputs[::-1])
    reversed_roles = type(d)(d.base, d.outputs, d.inputs)
    assert is_heavy(swapped, T) == is_heavy(d, T)
    assert is_heavy(reversed_roles, T) == is_heavy(d, T)


# ============================================================================
# 构造
# ============================================================================

def test_decollineator_closure_of_d_ps_is_petersen():
    g = decollineator_to_graph(build_d_ps())
    assert g.num_vertices == 10
    assert are_isomorphic(g, petersen())


def test_heaviness_equivalence_on_d_ps_and_q_ps(T):
    assert heaviness_equivalence(build_d_ps(), T)["agrees"]
    report = heaviness_equivalence(build_q_ps(), T)
    assert report["agrees"]
    assert not report["decollineator"]


def test_q_dipole_hypotheses():
    outer = (0, 1, 2, 3, 4)
    with pytest.raises(HypothesisError):
        q_dipole_from(petersen(), outer, outer)
    with pytest.raises(HypothesisError):
        q_dipole_from(petersen(), outer, (0, 1, 2, 3))
    with pytest.raises(HypothesisError):
        q_dipole_from(petersen(), outer, (0, 2, 4, 6, 8))


def test_composition_report_on_petersen_dipoles(T):
    report = composition_report(build_d_ps(), build_q_ps(), T)
    assert report["tuple_join_exact"]
    assert report["shape_subset"]


def test_closure_checks(T):
    checks = closure_checks(build_d_ps(), build_q_ps(), build_d_ps(), T)
    assert checks == {"decollineator": True, "deangulator": True}


@pytest.mark.parametrize("seed", [3, 17, 2024])
def test_composition_contains_transitions_on_random_dipoles(T, seed):
    dipoles = random_dipoles(8, seed=seed, max_vertices=8)
    for x1, x2 in zip(dipoles[::2], dipoles[1::2]):
        report = composition_report(x1, x2, T)
        assert report["tuple_join_exact"]
        assert report["shape_subset"]


def test_harvested_decollineators_close_to_their_source(T):
    pool = harvest_decollineators([petersen()], T, limit=4, seed=7)
    assert len(pool) == 4
    for x in pool:
        assert is_decollineator(x, T)
        assert are_isomorphic(decollineator_to_graph(x), petersen())


def test_colourable_graphs_yield_no_decollineators(T):
    assert harvest_decollineators([k4(), prism()], T) == []


def _assert_dqd_in_r(pool, qs, T, rounds, seed):
    rng = random.Random(seed)
    for _ in range(rounds):
        x = compose_all([rng.choice(pool), rng.choice(qs), rng.choice(pool)])
        assert transition_relation(x, T).shapes <= R


@pytest.mark.parametrize("seed", [1, 5])
def test_decollineator_q_decollineator_lies_in_r(T, seed):
    pool = harvest_decollineators([petersen()], T, limit=3, seed=seed)
    _assert_dqd_in_r(pool, [build_q_ps()], T, rounds=2, seed=seed)


@pytest.mark.slow
def test_decollineator_q_decollineator_lies_in_r_on_census(T):
    pool = harvest_decollineators(small_cubic_census(10), T, seed=11)
    assert pool
    closure = decollineator_to_graph(compose_all([pool[0], build_q_ps(), pool[-1]]))
    pool += harvest_decollineators([closure], T, limit=6, seed=11)
    _assert_dqd_in_r(pool, [build_q_ps()], T, rounds=20, seed=11)

def test_random_admissibility_suite_is_reproducible():
    first = random_admissibility_suite(count=12, seed=11, max_vertices=8)
    second = random_admissibility_suite(count=12, seed=11, max_vertices=8)
    assert first == second
    assert first["passed"]
    assert first["violations"] == []


@pytest.mark.slow
def test_random_admissibility_suite_full():
    report = random_admissibility_suite(count=200, seed=20240601, max_vertices=12)
    assert report["passed"]
