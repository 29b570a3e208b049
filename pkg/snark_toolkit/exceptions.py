"""
snark-toolkit 自定义异常

该模块定义了整个工具包中使用的所有自定义异常，
以提供更好的错误处理和命令行反馈。
"""

from typing import Optional, List, Dict, Any


class SnarkToolkitError(Exception):
    """所有工具包错误的基类异常"""

    def __init__(
        self,
        message: str,
        error_code: Optional[str] = None,
        details: Optional[Dict[str, Any]] = None,
        suggestions: Optional[List[str]] = None
    ):
        super().__init__(message)
        self.message = message
        self.error_code = error_code or self.__class__.__name__
        self.details = details or {}
        self.suggestions = suggestions or []

    def to_dict(self) -> Dict[str, Any]:
        """将异常转换为字典以用于结果文档"""
        return {
            "error": self.error_code,
            "message": self.message,
            "details": self.details,
            "suggestions": self.suggestions
        }


# ============================================================================
# 配置异常
# ============================================================================

class ConfigurationError(SnarkToolkitError):
    """配置错误时引发"""
    pass


# ============================================================================
# 多极子异常
# ============================================================================

class MultipoleError(SnarkToolkitError):
    """多极子结构错误的基类异常"""
    pass


class InvalidMultipoleError(MultipoleError):
    """多极子违反三正则或边端约束时引发"""

    def __init__(self, reason: str, vertex: Optional[int] = None, edge: Optional[int] = None):
        message = f"无效的多极子: {reason}"
        super().__init__(
            message=message,
            details={"reason": reason, "vertex": vertex, "edge": edge},
            suggestions=[
                "确保每个顶点恰好有三个边端",
                "确保每条边至少有一端连接到顶点"
            ]
        )


class LoopError(MultipoleError):
    """构造会产生自环时引发"""

    def __init__(self, vertex: int, operation: str = "construct"):
        message = f"{operation} 将在顶点 {vertex} 上产生自环"
        super().__init__(
            message=message,
            details={"vertex": vertex, "operation": operation},
            suggestions=["选择连接到不同顶点的悬挂边"]
        )


class UnknownDanglingError(MultipoleError):
    """悬挂边标签不存在时引发"""

    def __init__(self, label: str, available: Optional[List[str]] = None):
        message = f"未知的悬挂边标签: {label}"
        suggestions = ["检查悬挂边标签的拼写"]
        if available:
            suggestions.append(f"可用标签: {', '.join(available)}")
        super().__init__(
            message=message,
            details={"label": label, "available": available or []},
            suggestions=suggestions
        )


class UnknownEdgeError(MultipoleError):
    """边索引不存在或重复时引发"""

    def __init__(self, edge: int, reason: str = "不存在"):
        super().__init__(
            message=f"边 {edge} {reason}",
            details={"edge": edge, "reason": reason}
        )


class ConnectorMismatchError(MultipoleError):
    """连接器大小或元数不匹配时引发"""

    def __init__(self, expected: int, actual: int, context: str = ""):
        message = f"连接器大小不匹配: 期望 {expected}，实际 {actual}"
        if context:
            message += f" ({context})"
        super().__init__(
            message=message,
            details={"expected": expected, "actual": actual, "context": context},
            suggestions=["本工具包的转移分析只支持 (2,2)-极子"]
        )


class NotCubicError(MultipoleError):
    """输入不是三正则图时引发"""

    def __init__(self, operation: str, dangling: int = 0, vertex: Optional[int] = None, degree: Optional[int] = None):
        message = f"{operation} 需要一个没有悬挂边的三正则图 (悬挂边数: {dangling})"
        if vertex is not None:
            message += f"，顶点 {vertex} 的度数为 {degree}"
        super().__init__(
            message=message,
            details={"operation": operation, "dangling": dangling, "vertex": vertex, "degree": degree}
        )


class AcyclicGraphError(MultipoleError):
    """图中不存在圈时引发"""

    def __init__(self):
        super().__init__(message="图中没有圈，围长无定义")


class BridgeError(MultipoleError):
    """图中存在桥时引发"""

    def __init__(self, operation: str, bridge: int):
        message = f"{operation} 需要无桥图，但边 {bridge} 是桥"
        super().__init__(
            message=message,
            details={"operation": operation, "bridge": bridge},
            suggestions=["有桥的三正则图不存在处处非零流，也没有完美匹配覆盖保证"]
        )


# ============================================================================
# 几何异常
# ============================================================================

class GeometryError(SnarkToolkitError):
    """PG(3,2) 几何错误的基类异常"""
    pass


class DegenerateTetrahedronError(GeometryError):
    """四面体的角点不处于一般位置时引发"""

    def __init__(self, corners: List[int]):
        super().__init__(
            message=f"角点 {corners} 不处于一般位置",
            details={"corners": corners},
            suggestions=["选择构成 GF(2)^4 一组基的四个点，例如 (1, 2, 4, 8)"]
        )


class PointNotInTetrahedronError(GeometryError):
    """点不属于四面体时引发"""

    def __init__(self, point: int, corners: List[int]):
        super().__init__(
            message=f"点 {point} 不属于角点为 {corners} 的四面体",
            details={"point": point, "corners": corners}
        )


# ============================================================================
# 覆盖和流异常
# ============================================================================

class CoverError(SnarkToolkitError):
    """完美匹配覆盖错误的基类异常"""
    pass


class InvalidCoverError(CoverError):
    """覆盖不合法时引发"""

    def __init__(self, reason: str, matching: Optional[int] = None, edge: Optional[int] = None):
        super().__init__(
            message=f"无效的完美匹配覆盖: {reason}",
            details={"reason": reason, "matching": matching, "edge": edge}
        )


class FlowError(SnarkToolkitError):
    """流相关错误的基类异常"""
    pass


class InvalidFlowError(FlowError):
    """流赋值不合法时引发"""

    def __init__(self, reason: str, vertex: Optional[int] = None, edge: Optional[int] = None):
        super().__init__(
            message=f"无效的流: {reason}",
            details={"reason": reason, "vertex": vertex, "edge": edge}
        )


class InvalidFlowParametersError(FlowError):
    """(p, q) 参数不合法时引发"""

    def __init__(self, p: int, q: int, reason: str):
        super().__init__(
            message=f"无效的流参数 ({p}, {q}): {reason}",
            details={"p": p, "q": q, "reason": reason},
            suggestions=["要求 gcd(p, q) = 1 且 p ≥ 2q"]
        )


class HypothesisError(SnarkToolkitError):
    """构造的前提条件不满足时引发"""

    def __init__(self, construction: str, reason: str, details: Optional[Dict[str, Any]] = None):
        payload = {"construction": construction, "reason": reason}
        payload.update(details or {})
        super().__init__(
            message=f"{construction} 的前提条件不满足: {reason}",
            details=payload
        )


# ============================================================================
# 证书异常
# ============================================================================

class CertificateError(SnarkToolkitError):
    """证书不完整或校验失败时引发"""

    def __init__(self, certificate: str, reason: str, details: Optional[Dict[str, Any]] = None):
        payload = {"certificate": certificate, "reason": reason}
        payload.update(details or {})
        super().__init__(
            message=f"证书 {certificate} 被拒绝: {reason}",
            details=payload,
            suggestions=["检查方案中的每条超边是否都是重偶极子"]
        )


class SearchExhaustedError(SnarkToolkitError):
    """理论上保证存在的对象在穷举搜索中没有找到时引发"""

    def __init__(self, target: str, nodes: int):
        super().__init__(
            message=f"穷举搜索未找到 {target} (搜索节点数: {nodes})",
            details={"target": target, "nodes": nodes}
        )


# ============================================================================
# 格式异常
# ============================================================================

class FormatError(SnarkToolkitError):
    """文件格式解析错误"""

    def __init__(
        self,
        message: str,
        source: Optional[str] = None,
        offset: Optional[int] = None,
        line: Optional[int] = None
    ):
        location = []
        if line is not None:
            location.append(f"行 {line}")
        if offset is not None:
            location.append(f"字节偏移 {offset}")
        full_message = message if not location else f"{message} ({', '.join(location)})"
        super().__init__(
            message=full_message,
            details={"source": source, "offset": offset, "line": line}
        )
        self.reason = message
        self.offset = offset
        self.line = line


# ============================================================================
# 工具函数
# ============================================================================

def handle_exception(exc: Exception, context: Optional[str] = None) -> Dict[str, Any]:
    """
    将任何异常转换为标准化的错误字典。

    参数:
        exc: 要处理的异常
        context: 可选的上下文信息

    返回:
        标准化错误字典
    """
    if isinstance(exc, SnarkToolkitError):
        error_dict = exc.to_dict()
        if context:
            error_dict["details"]["context"] = context
    else:
        error_dict = {
            "error": exc.__class__.__name__,
            "message": str(exc),
            "details": {"context": context} if context else {},
            "suggestions": []
        }

        if isinstance(exc, FileNotFoundError):
            error_dict["suggestions"] = ["检查文件路径是否正确"]
        elif isinstance(exc, MemoryError):
            error_dict["suggestions"] = ["尝试较小的图", "减少并行进程数"]
        elif isinstance(exc, RecursionError):
            error_dict["suggestions"] = ["输入图过大，超出递归深度"]

    return error_dict
