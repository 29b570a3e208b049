"""
监控模块
"""

from .logger import (
    setup_logger,
    set_log_level,
    set_log_dir,
    add_file_logging,
    add_json_logging,
    get_logging_stats,
    log_with_context,
)

__all__ = [
    "setup_logger",
    "set_log_level",
    "set_log_dir",
    "add_file_logging",
    "add_json_logging",
    "get_logging_stats",
    "log_with_context",
]
