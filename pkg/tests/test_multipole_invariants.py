import networkx as nx
import pytest

from snark_toolkit.exceptions import AcyclicGraphError, NotCubicError
from snark_toolkit.multipole.builders import claw, get_builtin_graph, k33, k4, petersen, prism, theta
from snark_toolkit.multipole.invariants import (
    cyclic_connectivity_at_least,
    find_bridges,
    find_cycle_separating_cut,
    girth,
    is_three_edge_colourable,
    snark_report,
)
from snark_toolkit.multipole.isomorphism import are_isomorphic
from snark_toolkit.multipole.core import Multipole


def _brute_force_girth(m: Multipole) -> int:
    graph = nx.Graph()
    for u, v in ((e.u, e.v) for e in m.edges):
        if graph.has_edge(u, v):
            return 2
        graph.add_edge(u, v)
    return min(len(cycle) for cycle in nx.simple_cycles(graph))


def test_builders_have_documented_sizes():
    assert (petersen().num_vertices, petersen().num_edges) == (10, 15)
    assert (k4().num_vertices, k4().num_edges) == (4, 6)
    assert (theta().num_vertices, theta().num_edges) == (2, 3)
    assert (k33().num_vertices, prism().num_vertices) == (6, 6)
    assert get_builtin_graph("Petersen") == petersen()


@pytest.mark.parametrize("builder, expected", [(k4, 3), (theta, 2), (petersen, 5), (prism, 3), (k33, 4)])
def test_girth(builder, expected):
    assert girth(builder()) == expected


@pytest.mark.parametrize("builder", [k4, petersen, prism, k33])
def test_girth_agrees_with_cycle_enumeration(builder):
    g = builder()
    assert girth(g) == _brute_force_girth(g)


def test_girth_of_acyclic_multipole_raises():
    with pytest.raises(AcyclicGraphError):
        girth(claw())


def test_three_edge_colouring():
    colourable, witness = is_three_edge_colourable(k4())
    assert colourable
    for incident in k4().incidence:
        assert sorted(witness[e] for e in incident) == [0, 1, 2]

    colourable, witness = is_three_edge_colourable(petersen())
    assert not colourable
    assert witness is None

    with pytest.raises(NotCubicError):
        is_three_edge_colourable(claw())


def test_cyclic_connectivity():
    assert cyclic_connectivity_at_least(petersen(), 4)
    assert cyclic_connectivity_at_least(petersen(), 5)
    assert not cyclic_connectivity_at_least(prism(), 4)
    assert sorted(find_cycle_separating_cut(prism(), 4)) == [6, 7, 8]
    # 没有两个不交圈的图对任意 k 都满足
    assert cyclic_connectivity_at_least(k4(), 10)
    assert cyclic_connectivity_at_least(theta(), 10)


def test_bridges():
    assert find_bridges(petersen()) == []
    # 两个五顶点块由边 14 连接
    bridged = Multipole.from_edge_list(10, [
        (0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (0, 4),
        (5, 6), (5, 7), (6, 7), (6, 8), (7, 8), (5, 9),
        (3, 4), (8, 9), (4, 9),
    ])
    assert find_bridges(bridged) == [14]


def test_snark_report_on_petersen():
    report = snark_report(petersen())
    assert report["girth"] == 5
    assert report["bridgeless"]
    assert not report["three_edge_colourable"]
    assert report["cyclically_4_edge_connected"]
    assert report["nontrivial_snark"]


def test_isomorphism_distinguishes_prism_and_k33():
    assert not are_isomorphic(prism(), k33())
    relabelled = Multipole.from_edge_list(4, [(3, 2), (3, 1), (3, 0), (2, 1), (2, 0), (1, 0)])
    assert are_isomorphic(relabelled, k4())


def test_edge_handshake_on_all_builders():
    for builder in (petersen, k4, k33, theta, prism):
        g = builder()
        assert 2 * g.num_edges == 3 * g.num_vertices
        assert sum(len(inc) for inc in g.incidence) == 3 * g.num_vertices
