"""
几何模块
提供 PG(3,2)、四面体、点权重和点对形状分类
"""

from .tetrahedron import (
    CANONICAL_CORNERS,
    Tetrahedron,
    tetrahedron,
    pg32_lines,
    weight,
    shape_of,
    point_pairs,
    cover_coordinates,
    point_from_cover_coordinates,
    lines_with_one_midpoint,
)

__all__ = [
    "CANONICAL_CORNERS",
    "Tetrahedron",
    "tetrahedron",
    "pg32_lines",
    "weight",
    "shape_of",
    "point_pairs",
    "cover_coordinates",
    "point_from_cover_coordinates",
    "lines_with_one_midpoint",
]
