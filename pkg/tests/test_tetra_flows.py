from itertools import product

import pytest

from snark_toolkit.exceptions import InvalidFlowError, PointNotInTetrahedronError
from snark_toolkit.flows.tetra import (
    boundary_realizations,
    count_tetra_flows,
    enumerate_tetra_flows,
    find_tetra_flow,
    heavy_dangling_count,
    is_valid_tetra_flow,
)
from snark_toolkit.multipole.builders import claw, k33, k4, petersen, prism, theta
from snark_toolkit.superposition.construction import build_d_ps


@pytest.mark.parametrize("builder", [k4, prism, k33, theta])
def test_colourable_graphs_have_tetra_flows(T, builder):
    g = builder()
    flow, stats = find_tetra_flow(g, T)
    assert flow is not None
    assert is_valid_tetra_flow(g, T, flow)
    assert stats.queries >= 1


def test_petersen_has_no_tetra_flow(T):
    flow, stats = find_tetra_flow(petersen(), T)
    assert flow is None
    assert stats.nodes > 0
    assert list(enumerate_tetra_flows(petersen(), T)) == []


def test_claw_with_two_fixed_values(T):
    # 第三个值被 Kirchhoff 条件唯一确定
    flows = list(enumerate_tetra_flows(claw(), T, {"c:0": 1, "c:1": 2}))
    assert flows == [(1, 2, 3)]
    # 两个中点 3 与 5 的异或 6 是中点，但 {3, 5, 6} 不是四面体的线
    assert list(enumerate_tetra_flows(claw(), T, {"c:0": 3, "c:1": 5})) == []


def test_boundary_point_outside_tetrahedron_is_rejected(T):
    with pytest.raises(PointNotInTetrahedronError):
        list(enumerate_tetra_flows(claw(), T, {"c:0": 7}))


def test_k4_flow_count_matches_brute_force(T):
    g = k4()
    points = T.points()
    brute = sum(1 for values in product(points, repeat=g.num_edges) if is_valid_tetra_flow(g, T, values))
    assert count_tetra_flows(g, T) == brute


def test_validity_checks(T):
    g = k4()
    flow, _ = find_tetra_flow(g, T)
    broken = (7,) + flow[1:]
    assert not is_valid_tetra_flow(g, T, broken)
    assert not is_valid_tetra_flow(theta(), T, (1, 1, 1))
    assert not is_valid_tetra_flow(g, T, flow[:-1])


def test_symmetry_images_are_flows(T):
    g = prism()
    flow, _ = find_tetra_flow(g, T)
    for table in T.corner_permutations:
        assert is_valid_tetra_flow(g, T, tuple(table[x] for x in flow))


def test_heavy_dangling_count(T):
    assert heavy_dangling_count(claw(), T, (1, 2, 3)) == 1
    flow, _ = find_tetra_flow(k4(), T)
    assert heavy_dangling_count(k4(), T, flow) == 0
    with pytest.raises(InvalidFlowError):
        heavy_dangling_count(claw(), T, (1, 2, 4))


def test_boundary_realizations_satisfy_kirchhoff_closure(T):
    d = build_d_ps()
    tuples = boundary_realizations(d.base, T, d.boundary_labels)
    assert tuples
    assert tuples == tuple(sorted(tuples))
    for values in tuples:
        total = 0
        for value in values:
            total ^= value
        assert total == 0


def test_boundary_realizations_do_not_depend_on_threads(T):
    d = build_d_ps()
    sequential = boundary_realizations(d.base, T, d.boundary_labels, threads=1)
    parallel = boundary_realizations(d.base, T, d.boundary_labels, threads=2)
    assert sequential == parallel
