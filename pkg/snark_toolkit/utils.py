"""
snark-toolkit 工具函数

该模块包含计时、内存测量、格式化以及确定性并行映射等通用工具函数。
"""

import time
from concurrent.futures import ProcessPoolExecutor
from typing import Any, Callable, Dict, Iterable, List, Optional, TypeVar

from .config import config
from .monitoring.logger import setup_logger

logger = setup_logger(__name__)

T = TypeVar("T")
R = TypeVar("R")


# ============================================================================
# 并行工具
# ============================================================================

def resolve_threads(threads: Optional[int]) -> int:
    """返回有效并行数，未指定时使用配置值"""
    if threads is None:
        threads = config.search.THREADS
    return max(1, int(threads))


def parallel_map(
    func: Callable[[T], R],
    items: Iterable[T],
    threads: Optional[int] = None,
    chunksize: int = 4
) -> List[R]:
    """
    对 items 逐项应用 func，保持输入顺序。

    threads 为 1 时在当前进程中顺序执行；否则使用进程池。
    结果只依赖输入，与并行度和调度无关。

    参数:
        func: 可被 pickle 的顶层函数
        items: 输入序列
        threads: 并行进程数
        chunksize: 每次分发给工作进程的任务数

    返回:
        与 items 顺序一致的结果列表
    """
    work = list(items)
    workers = min(resolve_threads(threads), len(work)) if work else 1
    if workers <= 1:
        return [func(item) for item in work]

    logger.debug(f"并行执行 {len(work)} 个任务，进程数 {workers}")
    with ProcessPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(func, work, chunksize=max(1, chunksize)))


# ============================================================================
# 时间工具
# ============================================================================

def format_duration(seconds: float) -> str:
    """
    将持续时间格式化为人类可读的字符串。

    参数:
        seconds: 持续时间（秒）

    返回:
        格式化的持续时间字符串
    """
    if seconds < 1:
        return f"{seconds*1000:.0f}ms"
    elif seconds < 60:
        return f"{seconds:.1f}s"
    elif seconds < 3600:
        minutes = seconds / 60
        return f"{minutes:.1f}m"
    else:
        hours = seconds / 3600
        return f"{hours:.1f}h"


class Timer:
    """用于测量执行时间的简单计时器"""

    def __init__(self):
        self.start_time = None
        self.end_time = None

    def start(self):
        """启动计时器"""
        self.start_time = time.perf_counter()
        self.end_time = None

    def stop(self) -> float:
        """停止计时器并返回经过的时间"""
        self.end_time = time.perf_counter()
        return self.elapsed()

    def elapsed(self) -> float:
        """获取经过的时间"""
        if self.start_time is None:
            return 0.0
        end = self.end_time or time.perf_counter()
        return end - self.start_time

    def __enter__(self):
        self.start()
        return self

    def __exit__(self, *args):
        self.stop()


# ============================================================================
# 系统工具
# ============================================================================

def measure_memory_usage() -> Dict[str, Any]:
    """
    测量当前内存使用情况。

    返回:
        包含内存统计信息的字典
    """
    try:
        import psutil
        process = psutil.Process()
        memory_info = process.memory_info()
        return {
            'rss': memory_info.rss,  # 常驻内存集
            'vms': memory_info.vms,  # 虚拟内存大小
            'percent': process.memory_percent()
        }
    except ImportError:
        return {}


def bytes_to_human_readable(bytes_size: int) -> str:
    """将字节数转换为人类可读格式"""
    size = float(bytes_size)
    for unit in ['B', 'KB', 'MB', 'GB', 'TB']:
        if size < 1024.0:
            return f"{size:.1f} {unit}"
        size /= 1024.0
    return f"{size:.1f} PB"
