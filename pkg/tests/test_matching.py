import pytest

from snark_toolkit.exceptions import BridgeError, InvalidCoverError, InvalidFlowError
from snark_toolkit.flows.tetra import find_tetra_flow
from snark_toolkit.matching.census import cubic_graphs, small_cubic_census
from snark_toolkit.matching.cover import (
    cover_flow_counts,
    cover_to_flow,
    enumerate_perfect_matchings,
    flow_to_cover,
    is_perfect_matching,
    perfect_matching_index,
    verify_cover,
)
from snark_toolkit.flows.tetra import is_valid_tetra_flow
from snark_toolkit.multipole.builders import k33, k4, petersen, prism, theta
from snark_toolkit.multipole.core import Multipole
from snark_toolkit.multipole.invariants import is_three_edge_colourable
from snark_toolkit.types import CoverCertificate, PmiStrategy, Verdict


def test_perfect_matching_counts():
    assert len(enumerate_perfect_matchings(petersen())) == 6
    assert len(enumerate_perfect_matchings(k4())) == 3
    assert len(enumerate_perfect_matchings(theta())) == 3
    for matching in enumerate_perfect_matchings(petersen()):
        assert is_perfect_matching(petersen(), matching)


@pytest.mark.parametrize("builder", [k4, prism, k33])
@pytest.mark.parametrize("strategy", [PmiStrategy.COVER, PmiStrategy.FLOW])
def test_colourable_graphs_have_pmi_3(builder, strategy):
    result = perfect_matching_index(builder(), cap=5, strategy=strategy)
    assert result.verdict == Verdict.EXACT
    assert result.value == 3
    verify_cover(builder(), result.certificate)


def test_petersen_pmi():
    capped = perfect_matching_index(petersen(), cap=4)
    assert capped.verdict == Verdict.EXCEEDS_CAP
    assert capped.value is None
    assert set(capped.refuted) == {1, 2, 3, 4}

    exact = perfect_matching_index(petersen(), cap=5)
    assert exact.value == 5
    assert exact.certificate.size == 5
    verify_cover(petersen(), exact.certificate)


def test_pmi_rejects_bridges():
    bridged = Multipole.from_edge_list(10, [
        (0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (0, 4),
        (5, 6), (5, 7), (6, 7), (6, 8), (7, 8), (5, 9),
        (3, 4), (8, 9), (4, 9),
    ])
    with pytest.raises(BridgeError):
        perfect_matching_index(bridged)


def test_verify_cover_rejects_bad_certificates():
    matchings = enumerate_perfect_matchings(k4())
    with pytest.raises(InvalidCoverError):
        verify_cover(k4(), CoverCertificate(tuple(matchings[:2])))
    with pytest.raises(InvalidCoverError):
        verify_cover(k4(), CoverCertificate((frozenset({0, 1}),) + tuple(matchings)))


def test_cover_flow_round_trips_on_k4(T):
    matchings = enumerate_perfect_matchings(k4())
    cover = CoverCertificate(tuple(matchings) + (matchings[0],))
    flow = cover_to_flow(k4(), cover, T)
    assert is_valid_tetra_flow(k4(), T, flow)
    assert flow_to_cover(k4(), flow, T) == cover
    assert cover_to_flow(k4(), flow_to_cover(k4(), flow, T), T) == flow


def test_cover_to_flow_requires_four_matchings(T):
    matchings = enumerate_perfect_matchings(k4())
    with pytest.raises(InvalidCoverError):
        cover_to_flow(k4(), CoverCertificate(tuple(matchings)), T)
    with pytest.raises(InvalidFlowError):
        flow_to_cover(k4(), (1,) * 6, T)


def test_cover_flow_counts_are_reported_side_by_side(T):
    counts = cover_flow_counts(k4(), T)
    assert counts["ordered_covers"] > 0
    assert counts["tetra_flows"] > 0


def test_census_sizes():
    assert len(cubic_graphs(4)) == 1
    assert len(cubic_graphs(6)) == 2
    assert len(cubic_graphs(8)) == 5
    assert len(small_cubic_census(8)) == 8


@pytest.mark.slow
def test_full_census_and_flow_equivalence(T):
    assert len(cubic_graphs(10)) == 19
    census = small_cubic_census(10)
    assert len(census) == 1 + 2 + 5 + 18
    for g in census:
        result = perfect_matching_index(g, cap=5)
        colourable, _ = is_three_edge_colourable(g)
        assert result.value >= 3
        assert (result.value == 3) == colourable
        flow, _ = find_tetra_flow(g, T)
        assert (result.value <= 4) == (flow is not None)
        if flow is not None:
            cover = flow_to_cover(g, flow, T)
            assert cover_to_flow(g, cover, T) == flow
