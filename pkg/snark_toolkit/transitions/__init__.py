"""
转移分析模块
提供形状转移关系的代数、偶极子的转移计算和去共线子、去角子、重偶极子判定
"""

from .relations import (
    A,
    D,
    Q,
    R,
    DEANGULATOR,
    NAMED_RELATIONS,
    compose_relations,
    bidirectional_transitions,
    format_relation,
    parse_relation,
)
from .analysis import (
    TransitionResult,
    realizable_tuples,
    transition_relation,
    is_decollineator,
    is_deangulator,
    is_heavy,
    is_l_dipole,
    admissibility_check,
    decollineator_to_graph,
    q_dipole_from,
    harvest_decollineators,
    composition_report,
    closure_checks,
    heaviness_equivalence,
    random_admissibility_suite,
)

__all__ = [
    "A",
    "D",
    "Q",
    "R",
    "DEANGULATOR",
    "NAMED_RELATIONS",
    "compose_relations",
    "bidirectional_transitions",
    "format_relation",
    "parse_relation",
    "TransitionResult",
    "realizable_tuples",
    "transition_relation",
    "is_decollineator",
    "is_deangulator",
    "is_heavy",
    "is_l_dipole",
    "admissibility_check",
    "decollineator_to_graph",
    "q_dipole_from",
    "harvest_decollineators",
    "composition_report",
    "closure_checks",
    "heaviness_equivalence",
    "random_admissibility_suite",
]
