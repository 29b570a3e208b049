from collections import Counter

import pytest

from snark_toolkit.exceptions import DegenerateTetrahedronError, PointNotInTetrahedronError
from snark_toolkit.geometry.tetrahedron import (
    Tetrahedron,
    cover_coordinates,
    lines_with_one_midpoint,
    pg32_lines,
    point_from_cover_coordinates,
    point_pairs,
    shape_of,
    weight,
)
from snark_toolkit.types import Shape


def test_pg32_has_35_lines_and_7_through_each_point():
    lines = pg32_lines()
    assert len(lines) == 35
    assert frozenset((1, 2, 3)) in lines
    for x in range(1, 16):
        assert sum(1 for line in lines if x in line) == 7


def test_canonical_tetrahedron_points_and_lines(T):
    assert set(T.points()) == {1, 2, 4, 8, 3, 5, 9, 6, 10, 12}
    assert len(T.lines()) == 6
    assert all(line in pg32_lines() for line in T.lines())
    assert lines_with_one_midpoint(T)


def test_degenerate_corners_are_rejected():
    with pytest.raises(DegenerateTetrahedronError):
        Tetrahedron((1, 2, 4, 7))
    with pytest.raises(DegenerateTetrahedronError):
        Tetrahedron((1, 2, 3, 8))


def test_weights(T):
    assert weight(T, 1) == 1
    assert weight(T, 3) == 2
    assert sum(weight(T, x) for x in T.points()) == 16
    with pytest.raises(PointNotInTetrahedronError):
        weight(T, 7)


@pytest.mark.parametrize("x, y, shape", [
    (1, 2, Shape.LS),
    (1, 3, Shape.HL),
    (3, 5, Shape.ANG),
    (1, 12, Shape.ALT),
    (3, 12, Shape.AX),
    (5, 5, Shape.DPT),
])
def test_shape_examples(T, x, y, shape):
    assert shape_of(T, x, y) == shape
    assert shape_of(T, y, x) == shape


def test_shape_class_sizes(T):
    pairs = point_pairs(T)
    assert len(pairs) == 55
    counts = Counter(shape_of(T, x, y) for x, y in pairs)
    assert counts == {Shape.LS: 6, Shape.HL: 12, Shape.ANG: 12, Shape.ALT: 12, Shape.AX: 3, Shape.DPT: 10}


def test_shape_is_invariant_under_corner_permutations(T):
    assert len(T.corner_permutations) == 24
    for table in T.corner_permutations:
        for x, y in point_pairs(T):
            assert shape_of(T, table[x], table[y]) == shape_of(T, x, y)


def test_collinear_pairs_are_exactly_ls_and_hl(T):
    for x, y in point_pairs(T):
        if x == y:
            continue
        collinear = T.contains(x ^ y)
        assert collinear == shape_of(T, x, y).collinear


def test_cover_coordinates_round_trip(T):
    for x in T.points():
        assert point_from_cover_coordinates(T, cover_coordinates(T, x)) == x
    # 只在 P1、P2 中的边: 坐标 (0, 0, 1, 1) 对应 p3⊕p4
    assert point_from_cover_coordinates(T, (0, 0, 1, 1)) == 4 ^ 8
    assert point_from_cover_coordinates(T, (0, 0, 0, 0)) is None


def test_non_canonical_tetrahedron():
    other = Tetrahedron((3, 5, 9, 1))
    assert len(set(other.points())) == 10
    assert lines_with_one_midpoint(other)
