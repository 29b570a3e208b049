"""
多极子模块
提供多极子、偶极子的数据模型、代数运算、构造器和图不变量
"""

from .core import (
    Edge,
    Multipole,
    Dipole,
    junction,
    compose,
    compose_all,
    sever,
    remove_vertices,
    relabel_dangling,
    disjoint_union,
    canonical_dipole,
)
from .builders import petersen, k4, k33, theta, prism, claw, pass_through_dipole, get_builtin_graph
from .invariants import (
    girth,
    find_bridges,
    three_edge_colouring,
    is_three_edge_colourable,
    cyclic_connectivity_at_least,
    snark_report,
)
from .isomorphism import are_isomorphic

__all__ = [
    "Edge",
    "Multipole",
    "Dipole",
    "junction",
    "compose",
    "compose_all",
    "sever",
    "remove_vertices",
    "relabel_dangling",
    "disjoint_union",
    "canonical_dipole",
    "petersen",
    "k4",
    "k33",
    "theta",
    "prism",
    "claw",
    "pass_through_dipole",
    "get_builtin_graph",
    "girth",
    "find_bridges",
    "three_edge_colouring",
    "is_three_edge_colourable",
    "cyclic_connectivity_at_least",
    "snark_report",
    "are_isomorphic",
]
