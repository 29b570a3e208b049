"""
解析器基础接口和通用功能

该模块定义了所有文件格式解析器的抽象基类，
并提供按名称或路径加载图、偶极子和叠加方案的入口。
"""

from abc import ABC, abstractmethod
from pathlib import Path
from typing import Generic, Iterator, List, Optional, Tuple, TypeVar, Union

from ..exceptions import FormatError, SnarkToolkitError
from ..monitoring.logger import setup_logger
from ..multipole.builders import BUILTIN_GRAPHS, get_builtin_graph, pass_through_dipole
from ..multipole.core import Dipole, Multipole

logger = setup_logger(__name__)

T = TypeVar("T")


class BaseParser(ABC, Generic[T]):
    """
    所有文件格式解析器的抽象基类。

    子类实现文本与对象之间的双向转换；文件读写、存在性检查和
    错误来源标注由基类统一处理。
    """

    def __init__(self, format_name: str, extensions: List[str]):
        """
        初始化解析器。

        参数:
            format_name: 格式名称，用于日志和错误信息
            extensions: 该格式使用的文件扩展名
        """
        self.format_name = format_name
        self.extensions = [ext.lower() for ext in extensions]

    @abstractmethod
    def parse(self, text: str, source: Optional[str] = None) -> T:
        """
        解析文本。

        参数:
            text: 文档内容
            source: 可选的来源名称，附在错误信息中

        引发:
            FormatError: 如果文档格式错误
        """
        pass

    @abstractmethod
    def write(self, obj: T) -> str:
        """把对象序列化为文档文本"""
        pass

    def supports_file(self, file_path: Union[str, Path]) -> bool:
        return Path(file_path).suffix.lower() in self.extensions

    def read_file(self, file_path: Union[str, Path]) -> T:
        """
        读取并解析文件。

        引发:
            FileNotFoundError: 如果文件不存在
            FormatError: 如果文件格式错误
        """
        path = Path(file_path)
        if not path.is_file():
            raise FileNotFoundError(f"文件不存在: {path}")
        try:
            text = path.read_text(encoding="utf-8")
        except UnicodeDecodeError as e:
            raise FormatError(f"{self.format_name} 文件不是 UTF-8 文本", source=str(path), offset=e.start) from None
        result = self.parse(text, source=str(path))
        logger.debug(f"已解析 {self.format_name} 文件 {path}")
        return result

    def write_file(self, obj: T, file_path: Union[str, Path]) -> Path:
        """写入文件，必要时创建父目录"""
        path = Path(file_path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(self.write(obj), encoding="utf-8")
        logger.info(f"已写入 {self.format_name} 文件 {path}")
        return path


class LineParser(BaseParser[T]):
    """
    行式文本格式的解析器基类。

    空行和以 # 开头的行被忽略，其余行按空白切分为记号。
    """

    COMMENT = "#"

    def tokenize(self, text: str) -> Iterator[Tuple[int, List[str]]]:
        """逐行产生 (行号, 记号列表)，行号从 1 开始"""
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line or line.startswith(self.COMMENT):
                continue
            yield lineno, line.split()

    def error(self, message: str, source: Optional[str], line: Optional[int]) -> FormatError:
        return FormatError(f"{self.format_name}: {message}", source=source, line=line)


# ============================================================================
# 按名称或路径加载
# ============================================================================

BUILTIN_DIPOLES = ("d_ps", "q_ps", "basic", "pass-through")


def get_builtin_dipole(name: str) -> Dipole:
    """按名称获取内置偶极子"""
    from ..superposition.construction import basic_superedge, build_d_ps, build_q_ps

    builders = {
        "d_ps": build_d_ps,
        "q_ps": build_q_ps,
        "basic": basic_superedge,
        "pass-through": pass_through_dipole,
    }
    try:
        return builders[name.lower()]()
    except KeyError:
        raise SnarkToolkitError(
            message=f"未知的内置偶极子: {name}",
            error_code="UnknownBuiltinDipole",
            suggestions=[f"可用名称: {', '.join(BUILTIN_DIPOLES)}"]
        ) from None


def load_graph(source: str) -> Multipole:
    """
    加载图。

    参数:
        source: 内置图名称、graph6 文件（取第一行）或多极子文档路径

    引发:
        FormatError: 文件格式错误，或文档描述的不是图
        NotCubicError: graph6 文件的第一个图不是三正则图
    """
    if source.lower() in BUILTIN_GRAPHS:
        return get_builtin_graph(source)

    from .graph6 import Graph6Parser
    from .multipole_doc import MultipoleDocumentParser

    graph6 = Graph6Parser()
    if graph6.supports_file(source):
        graphs = graph6.read_file(source)
        if not graphs:
            raise FormatError("graph6 文件为空", source=source)
        return graphs[0].to_multipole(f"加载图 {source}")

    if not Path(source).is_file():
        raise SnarkToolkitError(
            message=f"未知的图: {source}",
            error_code="UnknownGraph",
            suggestions=[f"内置图: {', '.join(sorted(BUILTIN_GRAPHS))}", "或提供 .g6 / .mp 文件路径"]
        )
    obj = MultipoleDocumentParser().read_file(source)
    if not isinstance(obj, Multipole) or not obj.is_graph:
        raise FormatError("文档描述的不是没有悬挂边的图", source=source)
    return obj


def load_dipole(source: str) -> Dipole:
    """加载偶极子: 内置名称或带 dipole 行的多极子文档"""
    if source.lower() in BUILTIN_DIPOLES:
        return get_builtin_dipole(source)

    from .multipole_doc import MultipoleDocumentParser

    obj = MultipoleDocumentParser().read_file(source)
    if not isinstance(obj, Dipole):
        raise FormatError("文档描述的不是偶极子", source=source)
    return obj


def load_plan(source: str):
    """
    加载叠加方案。

    参数:
        source: "basic:<图>" 表示在该图上使用基本超边的方案；否则为方案文档路径
    """
    from ..superposition.construction import SuperpositionPlan, basic_plan
    from .multipole_doc import MultipoleDocumentParser

    if source.lower().startswith("basic:"):
        return basic_plan(load_graph(source.split(":", 1)[1]))

    obj = MultipoleDocumentParser().read_file(source)
    if not isinstance(obj, SuperpositionPlan):
        raise FormatError("文档描述的不是叠加方案", source=source)
    return obj
