import random

import pytest

from snark_toolkit.exceptions import (
    ConnectorMismatchError,
    InvalidMultipoleError,
    LoopError,
    UnknownDanglingError,
    UnknownEdgeError,
)
from snark_toolkit.multipole.builders import claw, k4, pass_through_dipole, petersen, theta
from snark_toolkit.multipole.core import (
    Edge,
    Multipole,
    compose,
    compose_all,
    disjoint_union,
    junction,
    relabel_dangling,
    remove_vertices,
    sever,
)
from snark_toolkit.multipole.generators import random_cubic_multigraph, random_dipoles
from snark_toolkit.multipole.isomorphism import are_isomorphic
from snark_toolkit.superposition.construction import build_d_ps, build_q_ps
from snark_toolkit.types import SeverPolicy


def _handshake(m: Multipole) -> bool:
    return 2 * m.num_edges == 3 * m.num_vertices + m.dangling_count


def test_two_claws_joined_pairwise_give_theta():
    m = disjoint_union(claw("a"), claw("b"))
    for i in range(3):
        m = junction(m, f"a:{i}", f"b:{i}")
    assert m.is_graph
    assert m.num_vertices == 2
    assert m.num_edges == 3
    assert are_isomorphic(m, theta())


def test_junction_drops_two_dangling_edges():
    m = disjoint_union(claw("a"), claw("b"))
    joined = junction(m, "a:0", "b:2")
    assert joined.dangling_count == m.dangling_count - 2
    assert joined.num_vertices == m.num_vertices
    assert _handshake(joined)


def test_junction_rejects_same_label_unknown_label_and_loops():
    m = disjoint_union(claw("a"), claw("b"))
    with pytest.raises(InvalidMultipoleError):
        junction(m, "a:0", "a:0")
    with pytest.raises(UnknownDanglingError):
        junction(m, "a:0", "z:0")
    with pytest.raises(LoopError):
        junction(m, "a:0", "a:1")


def test_loops_and_wrong_degrees_are_rejected():
    with pytest.raises(LoopError):
        Multipole(2, (Edge(0, 0), Edge(0, 1), Edge(1, 1)))
    with pytest.raises(InvalidMultipoleError):
        Multipole.from_edge_list(2, [(0, 1), (0, 1)])
    with pytest.raises(InvalidMultipoleError):
        Multipole(1, (Edge(0, None, "a:0"), Edge(0, None, "a:0"), Edge(0, None, "a:1")))


def test_sever_and_rejoin_petersen_is_identity_up_to_isomorphism():
    g = petersen()
    d = sever(g, [0, 7], SeverPolicy.SAME_EDGE)
    assert d.base.dangling_count == 4
    assert d.num_vertices == 10
    m = junction(d.base, "in:0", "in:1")
    m = junction(m, "out:0", "out:1")
    assert are_isomorphic(m, g)


REJOIN_PAIRS = {
    SeverPolicy.SAME_EDGE: [("in:0", "in:1"), ("out:0", "out:1")],
    SeverPolicy.SPLIT: [("in:0", "out:0"), ("in:1", "out:1")],
}


def _sever_rejoin_cases(count: int, seed: int):
    rng = random.Random(seed)
    for _ in range(count):
        g = random_cubic_multigraph(rng.choice([2, 4, 6, 8, 10, 12]), rng)
        policy = rng.choice([SeverPolicy.SAME_EDGE, SeverPolicy.SPLIT])
        yield g, rng.sample(range(g.num_edges), 2), policy


def _assert_rejoin_is_identity(g: Multipole, cuts, policy: SeverPolicy) -> None:
    m = sever(g, cuts, policy).base
    for s, t in REJOIN_PAIRS[policy]:
        m = junction(m, s, t)
    assert are_isomorphic(m, g), f"切断 {cuts} ({policy.value}) 后重新结合与原图不同构"


@pytest.mark.parametrize("seed", range(5))
def test_sever_and_rejoin_random_graphs(seed):
    for g, cuts, policy in _sever_rejoin_cases(10, seed):
        _assert_rejoin_is_identity(g, cuts, policy)


@pytest.mark.slow
def test_sever_and_rejoin_thousand_random_graphs():
    for g, cuts, policy in _sever_rejoin_cases(1000, 20240601):
        _assert_rejoin_is_identity(g, cuts, policy)


def test_sever_theta_one_edge_split_gives_one_one_pole():
    d = sever(theta(), [0], SeverPolicy.SPLIT)
    assert d.arity == 1
    assert d.num_vertices == 2


def test_sever_rejects_unknown_and_repeated_edges():
    with pytest.raises(UnknownEdgeError):
        sever(petersen(), [0, 99])
    with pytest.raises(UnknownEdgeError):
        sever(petersen(), [3, 3])
    with pytest.raises(ConnectorMismatchError):
        sever(petersen(), [1, 2, 3], SeverPolicy.SAME_EDGE)


def test_sever_explicit_assignment():
    d = sever(petersen(), [0, 5], SeverPolicy.EXPLICIT, [("in", "in"), ("out", "out")])
    assert d.inputs == ("in:0", "in:1")
    assert d.outputs == ("out:0", "out:1")
    with pytest.raises(ConnectorMismatchError):
        sever(petersen(), [0, 5], SeverPolicy.EXPLICIT, [("in", "in"), ("in", "out")])


def test_remove_vertices():
    m = remove_vertices(petersen(), [0, 1])
    assert m.num_vertices == 8
    assert m.dangling_count == 4
    assert _handshake(m)

    m = remove_vertices(k4(), [0])
    assert m.num_vertices == 3
    assert m.dangling_count == 3

    g = petersen()
    assert remove_vertices(g, []) == g


def test_compose_counts_vertices_and_checks_arity():
    d = build_d_ps()
    q = build_q_ps()
    x = compose_all([d, q, d])
    assert x.num_vertices == 8 + 10 + 8
    assert x.inputs == ("in:0", "in:1")
    assert x.outputs == ("out:0", "out:1")
    assert _handshake(x.base)

    single = sever(theta(), [0], SeverPolicy.SPLIT)
    with pytest.raises(ConnectorMismatchError):
        compose(d, single)


def test_compose_is_associative_on_random_dipoles():
    dipoles = random_dipoles(9, seed=7, max_vertices=8)
    for i in range(0, 9, 3):
        a, b, c = dipoles[i:i + 3]
        assert are_isomorphic(compose(compose(a, b), c), compose(a, compose(b, c)))


def test_relabel_dangling_checks_labels():
    m = claw("a")
    relabelled = relabel_dangling(m, {"a:0": "b:5"})
    assert "b:5" in relabelled.dangling_labels
    with pytest.raises(UnknownDanglingError):
        relabel_dangling(m, {"z:0": "b:0"})


def test_pass_through_dipole_shape():
    d = pass_through_dipole()
    assert d.num_vertices == 2
    assert d.input_edges() == (0, 1)
    assert d.output_edges() == (3, 4)
