"""
完美匹配模块
提供完美匹配枚举、完美匹配指数、覆盖与 T-流的转换以及小规模三正则图普查
"""

from .cover import (
    PmiResult,
    enumerate_perfect_matchings,
    perfect_matching_index,
    verify_cover,
    cover_to_flow,
    flow_to_cover,
    count_ordered_covers,
    cover_flow_counts,
)
from .census import cubic_graphs, small_cubic_census

__all__ = [
    "PmiResult",
    "enumerate_perfect_matchings",
    "perfect_matching_index",
    "verify_cover",
    "cover_to_flow",
    "flow_to_cover",
    "count_ordered_covers",
    "cover_flow_counts",
    "cubic_graphs",
    "small_cubic_census",
]
