"""
命令模块初始化
"""

from .analysis import pmi_sync, tetraflow_sync, transitions_sync, cfn_sync, totals_sync
from .construction import build_superposition_sync
from .acceptance import run_pipeline, select_criteria, verify_paper_sync
from .verify import verify_document, verify_sync
from .common import exit_code, make_document, run_command


# 命令注册函数
def register_all_tools(subparsers):
    """注册所有子命令"""
    from .analysis import register_analysis_tools
    from .construction import register_construction_tools
    from .acceptance import register_acceptance_tools
    from .verify import register_verify_tools

    register_analysis_tools(subparsers)
    register_construction_tools(subparsers)
    register_acceptance_tools(subparsers)
    register_verify_tools(subparsers)


__all__ = [
    "pmi_sync",
    "tetraflow_sync",
    "transitions_sync",
    "cfn_sync",
    "totals_sync",
    "build_superposition_sync",
    "run_pipeline",
    "select_criteria",
    "verify_paper_sync",
    "verify_document",
    "verify_sync",
    "exit_code",
    "make_document",
    "run_command",
    "register_all_tools",
]
