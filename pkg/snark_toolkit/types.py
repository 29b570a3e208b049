"""
snark-toolkit 类型定义

该模块包含整个工具包中使用的枚举、数据类、命令参数模型和结果文档模型。
"""

import json
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, FrozenSet, List, Optional, Tuple

from pydantic import BaseModel, Field


# ============================================================================
# 枚举
# ============================================================================

class Shape(Enum):
    """四面体点对的六种形状"""
    LS = "ls"      # 两个角点
    HL = "hl"      # 角点与其所在棱的中点
    ANG = "ang"    # 共享一个角点的两个中点
    ALT = "alt"    # 角点与对棱中点
    AX = "ax"      # 互补的两个中点
    DPT = "dpt"    # 退化点对 {x, x}

    @property
    def collinear(self) -> bool:
        """ls 和 hl 是仅有的共线非退化形状"""
        return self in (Shape.LS, Shape.HL)

    @classmethod
    def from_token(cls, token: str) -> "Shape":
        return cls(token.strip().lower())


class Verdict(Enum):
    """判定结果"""
    FOUND = "found"
    NONE = "none"
    EXACT = "exact"
    EXCEEDS_CAP = "exceeds_cap"
    PASS = "pass"
    FAIL = "fail"
    REFUSED = "refused"


class PmiStrategy(Enum):
    """完美匹配指数的计算策略"""
    AUTO = "auto"
    COVER = "cover"
    FLOW = "flow"


class SeverPolicy(Enum):
    """切断边时半边到连接器的分配策略"""
    SAME_EDGE = "same-edge"
    SPLIT = "split"
    EXPLICIT = "explicit"


class FlowUnits(Enum):
    """流值的单位"""
    REAL = "real"
    INTEGER = "integer"
    MODULAR = "modular"


# ============================================================================
# 数据类
# ============================================================================

@dataclass
class SearchStats:
    """回溯搜索统计，作为穷举证据"""
    nodes: int = 0
    queries: int = 0
    solutions: int = 0

    def merge(self, other: "SearchStats") -> "SearchStats":
        self.nodes += other.nodes
        self.queries += other.queries
        self.solutions += other.solutions
        return self

    def to_dict(self) -> Dict[str, int]:
        return {"nodes": self.nodes, "queries": self.queries, "solutions": self.solutions}


@dataclass(frozen=True)
class CoverCertificate:
    """完美匹配覆盖证书: 有序的完美匹配列表，每个匹配是边索引集合"""
    matchings: Tuple[FrozenSet[int], ...]

    @property
    def size(self) -> int:
        return len(self.matchings)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": "cover",
            "size": self.size,
            "matchings": [sorted(m) for m in self.matchings],
        }

    @classmethod
    def from_lists(cls, matchings: List[List[int]]) -> "CoverCertificate":
        return cls(tuple(frozenset(m) for m in matchings))


@dataclass(frozen=True)
class FlowValuation:
    """
    流赋值。

    values[i] 是边 i 沿参考方向的带符号值。内部边的参考方向是 u → v，
    悬挂边的参考方向是从自由端指向所连顶点。
    """
    values: Tuple[Fraction, ...]
    p: int
    q: int
    units: FlowUnits = FlowUnits.REAL

    @property
    def r(self) -> Fraction:
        return Fraction(self.p, self.q)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": "circular_flow",
            "p": self.p,
            "q": self.q,
            "units": self.units.value,
            "values": {
                str(i): ["+" if v > 0 else "-", format_fraction(abs(v))]
                for i, v in enumerate(self.values)
            },
        }

    @classmethod
    def from_dict(cls, payload: Dict[str, Any]) -> "FlowValuation":
        """to_dict 的逆"""
        entries = payload["values"]
        values = []
        for i in range(len(entries)):
            sign, magnitude = entries[str(i)]
            value = parse_fraction(magnitude)
            values.append(-value if sign == "-" else value)
        return cls(tuple(values), int(payload["p"]), int(payload["q"]), FlowUnits(payload["units"]))


def format_fraction(value: Fraction) -> str:
    """精确有理数打印为 "num/den"，整数打印为 "num" """
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def parse_fraction(text: str) -> Fraction:
    return Fraction(text.strip())


# ============================================================================
# 命令参数模型
# ============================================================================

class ToolParams(BaseModel):
    """所有命令参数的基类"""
    threads: int = Field(default=1, ge=1)
    seed: Optional[int] = None


class PmiParams(ToolParams):
    """pmi 命令的参数"""
    graph: str
    cap: int = Field(default=5, ge=3)
    strategy: PmiStrategy = PmiStrategy.AUTO


class TetraFlowParams(ToolParams):
    """tetraflow 命令的参数"""
    graph: str


class TransitionsParams(ToolParams):
    """transitions 命令的参数"""
    dipole: str


class SuperpositionParams(ToolParams):
    """build-superposition 命令的参数"""
    plan: str
    write_graph: Optional[str] = None
    full_report: bool = False


class CfnParams(ToolParams):
    """cfn 命令的参数"""
    graph: str
    q_max: int = Field(default=3, ge=1)


class TotalsParams(ToolParams):
    """totals 命令的参数"""
    dipole: str
    p: int = Field(ge=2)
    q: int = Field(ge=1)


class VerifyPaperParams(ToolParams):
    """verify-paper 命令的参数"""
    quick: bool = False
    fast: bool = False


class VerifyParams(ToolParams):
    """verify 命令的参数"""
    result_file: str
    graph: Optional[str] = None


# ============================================================================
# 结果模型
# ============================================================================

class CheckResult(BaseModel):
    """验收流水线中单个检查步骤的结果"""
    name: str
    passed: bool
    details: Dict[str, Any] = Field(default_factory=dict)
    duration: Optional[float] = None


class ResultDocument(BaseModel):
    """
    命令的结构化输出。

    字段名稳定；计时信息只出现在 timing 字段中，
    因此去掉 timing 后的文档在任意并行度下逐字节相同。
    """
    command: str
    graph: Optional[str] = None
    verdict: str
    value: Optional[str] = None
    passed: bool = True
    parameters: Dict[str, Any] = Field(default_factory=dict)
    certificate: Dict[str, Any] = Field(default_factory=dict)
    statistics: Dict[str, Any] = Field(default_factory=dict)
    checks: List[CheckResult] = Field(default_factory=list)
    timing: Dict[str, float] = Field(default_factory=dict)
    error: Optional[Dict[str, Any]] = None

    def to_json(self, indent: Optional[int] = 2) -> str:
        """序列化为键排序的 JSON"""
        return json.dumps(self.model_dump(mode="json"), sort_keys=True, indent=indent, ensure_ascii=False)

    def canonical_json(self) -> str:
        """去掉所有计时信息后的规范 JSON，用于确定性比较"""
        payload = self.model_dump(mode="json", exclude={"timing"})
        for check in payload.get("checks", []):
            check.pop("duration", None)
        return json.dumps(payload, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


# ============================================================================
# 类型别名
# ============================================================================

GFPoint = int
PointPair = Tuple[int, int]
PairTransition = Tuple[PointPair, PointPair]
ShapeTransition = Tuple[Shape, Shape]
ShapeRelation = FrozenSet[ShapeTransition]
TetraFlow = Tuple[int, ...]
BoundaryTuple = Tuple[int, ...]
