"""
重叠加模块
提供 Petersen 偶极子、基本超边、重叠加构造和 π ≥ 5 的计数证书
"""

from .construction import (
    PETERSEN_Q_CYCLES,
    CANONICAL_ATTACHMENT,
    build_d_ps,
    build_q_ps,
    basic_superedge,
    SuperpositionPlan,
    Superposition,
    basic_plan,
    lift,
    heavy_superposition,
    realizes_plan,
)
from .certificate import (
    SuperedgeRecord,
    HeavinessCertificate,
    build_heaviness_certificate,
    certify_pmi_at_least_5,
)

__all__ = [
    "PETERSEN_Q_CYCLES",
    "CANONICAL_ATTACHMENT",
    "build_d_ps",
    "build_q_ps",
    "basic_superedge",
    "SuperpositionPlan",
    "Superposition",
    "basic_plan",
    "lift",
    "heavy_superposition",
    "realizes_plan",
    "SuperedgeRecord",
    "HeavinessCertificate",
    "build_heaviness_certificate",
    "certify_pmi_at_least_5",
]
