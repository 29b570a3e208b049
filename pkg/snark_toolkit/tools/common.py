"""
命令共用的结果文档构造和执行包装
"""

from typing import Any, Callable, Dict, List, Optional

from ..exceptions import handle_exception
from ..monitoring.logger import setup_logger
from ..types import CheckResult, ResultDocument, ToolParams
from ..utils import Timer, measure_memory_usage

logger = setup_logger(__name__)

# 退出码
EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_ERROR = 2


def document_parameters(params: ToolParams) -> Dict[str, Any]:
    """命令参数；并行数不影响结果，因此不写入文档"""
    return params.model_dump(mode="json", exclude={"threads"})


def make_document(
    command: str,
    params: ToolParams,
    verdict: str,
    passed: bool = True,
    graph: Optional[str] = None,
    value: Optional[str] = None,
    certificate: Optional[Dict[str, Any]] = None,
    statistics: Optional[Dict[str, Any]] = None,
    checks: Optional[List[CheckResult]] = None,
) -> ResultDocument:
    return ResultDocument(
        command=command,
        graph=graph,
        verdict=verdict,
        value=value,
        passed=passed,
        parameters=document_parameters(params),
        certificate=certificate or {},
        statistics=statistics or {},
        checks=checks or [],
    )


def run_command(command: str, params: ToolParams, body: Callable[[ToolParams], ResultDocument]) -> ResultDocument:
    """
    执行命令并附加计时；异常转换为带 error 字段的文档。

    参数:
        command: 命令名
        params: 已验证的参数模型
        body: 命令实现
    """
    timer = Timer()
    timer.start()
    try:
        document = body(params)
    except Exception as e:
        logger.error(f"命令 {command} 失败: {e}")
        document = make_document(command, params, verdict="error", passed=False)
        document.error = handle_exception(e, context=command)
    document.timing = {"total_seconds": round(timer.stop(), 3)}
    memory = measure_memory_usage()
    if memory:
        document.timing["rss_mb"] = round(memory["rss"] / 2**20, 1)
    return document


def exit_code(document: ResultDocument) -> int:
    """0 成功，1 否定判定，2 错误"""
    if document.error is not None:
        return EXIT_ERROR
    return EXIT_OK if document.passed else EXIT_NEGATIVE
