"""
流模块
提供四面体流搜索、圆流判定、圆流数、偶极子总流以及重叠加上的流模板
"""

from .tetra import (
    TetraFlowSearch,
    find_tetra_flow,
    enumerate_tetra_flows,
    count_tetra_flows,
    is_valid_tetra_flow,
    heavy_dangling_count,
    boundary_realizations,
)
from .circular import (
    ModularFlowSearch,
    IntegerFlowSearch,
    CircularFlowResult,
    CfnResult,
    TotalsResult,
    has_circular_pq_flow,
    search_integer_pq_flow,
    lift_modular_flow,
    verify_flow,
    farey_candidates,
    circular_flow_number,
    modular_totals_through,
    refute_9_2_flow_on_superposition,
)
from .templates import (
    SuperedgeTemplate,
    TemplateSet,
    derive_superedge_templates,
    construct_14_3_flow,
)

__all__ = [
    "TetraFlowSearch",
    "find_tetra_flow",
    "enumerate_tetra_flows",
    "count_tetra_flows",
    "is_valid_tetra_flow",
    "heavy_dangling_count",
    "boundary_realizations",
    "ModularFlowSearch",
    "IntegerFlowSearch",
    "CircularFlowResult",
    "CfnResult",
    "TotalsResult",
    "has_circular_pq_flow",
    "search_integer_pq_flow",
    "lift_modular_flow",
    "verify_flow",
    "farey_candidates",
    "circular_flow_number",
    "modular_totals_through",
    "refute_9_2_flow_on_superposition",
    "SuperedgeTemplate",
    "TemplateSet",
    "derive_superedge_templates",
    "construct_14_3_flow",
]
