"""
结果文档的读写
"""

import json
from typing import Optional

from pydantic import ValidationError

from ..config import config
from ..exceptions import FormatError
from ..types import ResultDocument
from .base import BaseParser


class ResultDocumentParser(BaseParser[ResultDocument]):
    """键排序 JSON 形式的 ResultDocument"""

    def __init__(self, indent: Optional[int] = None):
        super().__init__("result", [".json"])
        self.indent = config.output.JSON_INDENT if indent is None else indent

    def parse(self, text: str, source: Optional[str] = None) -> ResultDocument:
        try:
            payload = json.loads(text)
        except json.JSONDecodeError as e:
            raise FormatError(f"结果文档不是合法 JSON: {e.msg}", source=source, offset=e.pos, line=e.lineno) from None
        try:
            return ResultDocument.model_validate(payload)
        except ValidationError as e:
            first = e.errors()[0]
            location = ".".join(str(part) for part in first["loc"])
            raise FormatError(f"结果文档字段 {location} 无效: {first['msg']}", source=source) from None

    def write(self, obj: ResultDocument) -> str:
        return obj.to_json(indent=self.indent) + "\n"


def read_result(path: str) -> ResultDocument:
    return ResultDocumentParser().read_file(path)


def write_result(document: ResultDocument, path: str) -> str:
    return str(ResultDocumentParser().write_file(document, path))
