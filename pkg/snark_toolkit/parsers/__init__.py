"""
文件格式解析器
graph6、多极子文档和结果文档的读写，以及按名称或路径加载输入
"""

from .base import (
    BaseParser,
    LineParser,
    BUILTIN_DIPOLES,
    get_builtin_dipole,
    load_graph,
    load_dipole,
    load_plan,
)
from .graph6 import Graph6Parser, SimpleGraph, validate_graph6, decode_graph6, parse_graph6, write_graph6
from .multipole_doc import MultipoleDocumentParser, parse_multipole, write_multipole
from .results import ResultDocumentParser, read_result, write_result

__all__ = [
    "BaseParser",
    "LineParser",
    "BUILTIN_DIPOLES",
    "get_builtin_dipole",
    "load_graph",
    "load_dipole",
    "load_plan",
    "Graph6Parser",
    "SimpleGraph",
    "validate_graph6",
    "decode_graph6",
    "parse_graph6",
    "write_graph6",
    "MultipoleDocumentParser",
    "parse_multipole",
    "write_multipole",
    "ResultDocumentParser",
    "read_result",
    "write_result",
]
