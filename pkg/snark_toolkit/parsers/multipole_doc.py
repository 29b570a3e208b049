"""
多极子文档格式

行式文本格式，描述多极子、偶极子或叠加方案:

    multipole <n> <m>
    dipole <输入连接器> <输出连接器>      # 可选
    v <id>                               # n 行，id 依次为 0..n-1
    e <端> <端>                          # m 行，按边序；端为 v<id> 或 d:<连接器>:<序号>
    plan                                 # 可选；此时上面的多极子是基图
    superedge <名称>
      multipole ... / dipole ... / v ... / e ...
    end
    base-edge <i> <名称> <in0> <in1> <out0> <out1>

写出再解析得到与原对象相等的对象。
"""

from typing import Dict, List, Optional, Sequence, Tuple, Union

from ..exceptions import FormatError, SnarkToolkitError
from ..monitoring.logger import setup_logger
from ..multipole.core import LABEL_PATTERN, Dipole, Edge, Multipole, split_label
from .base import LineParser

logger = setup_logger(__name__)

Document = Union[Multipole, Dipole, "SuperpositionPlan"]  # noqa: F821
Lines = List[Tuple[int, List[str]]]


def _int(token: str, what: str) -> int:
    value = int(token)
    if value < 0:
        raise ValueError(f"{what} 不能为负")
    return value


class MultipoleDocumentParser(LineParser[Document]):
    """多极子、偶极子和叠加方案文档的解析与写出"""

    def __init__(self):
        super().__init__("multipole", [".mp", ".multipole", ".plan"])

    # ------------------------------------------------------------------
    # 解析
    # ------------------------------------------------------------------

    def parse(self, text: str, source: Optional[str] = None) -> Document:
        lines = list(self.tokenize(text))
        if not lines:
            raise self.error("文档为空", source, None)
        pos, obj = self._parse_body(lines, 0, source)

        if pos < len(lines) and lines[pos][1][0] == "plan":
            if isinstance(obj, Dipole) or not obj.is_graph:
                raise self.error("叠加方案的基图不能带悬挂边", source, lines[pos][0])
            pos, obj = self._parse_plan(lines, pos, obj, source)

        if pos < len(lines):
            raise self.error(f"多余的内容: {' '.join(lines[pos][1])}", source, lines[pos][0])
        return obj

    def _expect(self, lines: Lines, pos: int, keyword: str, arity: int, source: Optional[str]) -> List[str]:
        if pos >= len(lines):
            raise self.error(f"文档意外结束，需要 {keyword}", source, lines[-1][0] if lines else None)
        lineno, tokens = lines[pos]
        if tokens[0] != keyword or len(tokens) != arity + 1:
            raise self.error(f"需要 '{keyword}' 加 {arity} 个参数，得到 '{' '.join(tokens)}'", source, lineno)
        return tokens[1:]

    def _parse_end(self, token: str, labels: Dict[str, int], lineno: int, source: Optional[str]) -> Union[int, str]:
        if token.startswith("v"):
            try:
                return _int(token[1:], "顶点编号")
            except ValueError:
                raise self.error(f"无效的顶点端: {token}", source, lineno) from None
        if token.startswith("d:"):
            label = token[2:]
            if not LABEL_PATTERN.match(label):
                raise self.error(f"无效的悬挂端: {token}", source, lineno)
            if label in labels:
                raise self.error(f"重复的悬挂标签 {label}（首次出现于行 {labels[label]}）", source, lineno)
            labels[label] = lineno
            return label
        raise self.error(f"无法识别的边端: {token}", source, lineno)

    def _parse_body(self, lines: Lines, pos: int, source: Optional[str]) -> Tuple[int, Union[Multipole, Dipole]]:
        header_line = lines[pos][0] if pos < len(lines) else None
        try:
            n, m = (_int(t, "计数") for t in self._expect(lines, pos, "multipole", 2, source))
        except ValueError as e:
            raise self.error(f"无效的头部: {e}", source, header_line) from None
        pos += 1

        connectors: Optional[Tuple[str, str]] = None
        if pos < len(lines) and lines[pos][1][0] == "dipole":
            in_conn, out_conn = self._expect(lines, pos, "dipole", 2, source)
            if in_conn == out_conn:
                raise self.error("输入和输出连接器名称必须不同", source, lines[pos][0])
            connectors = (in_conn, out_conn)
            pos += 1

        for vertex in range(n):
            (token,) = self._expect(lines, pos, "v", 1, source)
            if token != str(vertex):
                raise self.error(f"顶点行必须依次编号，需要 {vertex}，得到 {token}", source, lines[pos][0])
            pos += 1

        edges: List[Edge] = []
        labels: Dict[str, int] = {}
        for _ in range(m):
            a, b = self._expect(lines, pos, "e", 2, source)
            lineno = lines[pos][0]
            ends = [self._parse_end(token, labels, lineno, source) for token in (a, b)]
            vertices = [end for end in ends if isinstance(end, int)]
            dangling = [end for end in ends if isinstance(end, str)]
            if not vertices:
                raise self.error("边至少要有一个顶点端", source, lineno)
            if dangling:
                edges.append(Edge(vertices[0], None, dangling[0]))
            else:
                edges.append(Edge(vertices[0], vertices[1]))
            pos += 1

        try:
            multipole = Multipole(n, tuple(edges))
        except SnarkToolkitError as e:
            raise self.error(e.message, source, header_line) from None

        if connectors is None:
            return pos, multipole
        return pos, self._make_dipole(multipole, connectors, source, header_line)

    def _make_dipole(
        self, m: Multipole, connectors: Tuple[str, str], source: Optional[str], lineno: Optional[int]
    ) -> Dipole:
        groups: Dict[str, List[str]] = {name: [] for name in connectors}
        for label in m.dangling_labels:
            connector, _ = split_label(label)
            if connector not in groups:
                raise self.error(f"悬挂边 {label} 不属于声明的连接器 {list(connectors)}", source, lineno)
            groups[connector].append(label)
        inputs, outputs = (sorted(groups[name], key=lambda l: split_label(l)[1]) for name in connectors)
        if len(inputs) != len(outputs):
            raise self.error(f"连接器大小不一致: 输入 {len(inputs)}，输出 {len(outputs)}", source, lineno)
        try:
            return Dipole(m, tuple(inputs), tuple(outputs))
        except SnarkToolkitError as e:
            raise self.error(e.message, source, lineno) from None

    def _parse_plan(self, lines: Lines, pos: int, base: Multipole, source: Optional[str]):
        from ..superposition.construction import SuperpositionPlan

        self._expect(lines, pos, "plan", 0, source)
        pos += 1

        blocks: Dict[str, Dipole] = {}
        while pos < len(lines) and lines[pos][1][0] == "superedge":
            lineno = lines[pos][0]
            (name,) = self._expect(lines, pos, "superedge", 1, source)
            if name in blocks:
                raise self.error(f"重复的超边名称: {name}", source, lineno)
            pos, dipole = self._parse_body(lines, pos + 1, source)
            if not isinstance(dipole, Dipole):
                raise self.error(f"超边 {name} 缺少 dipole 行", source, lineno)
            self._expect(lines, pos, "end", 0, source)
            blocks[name] = dipole
            pos += 1

        names: List[str] = []
        attachments: List[Tuple[int, int, int, int]] = []
        for index in range(base.num_edges):
            tokens = self._expect(lines, pos, "base-edge", 6, source)
            lineno = lines[pos][0]
            try:
                edge_index = _int(tokens[0], "边索引")
                attachment = tuple(_int(t, "连接") for t in tokens[2:])
            except ValueError as e:
                raise self.error(f"无效的 base-edge 行: {e}", source, lineno) from None
            if edge_index != index:
                raise self.error(f"base-edge 必须按边序给出，需要 {index}，得到 {edge_index}", source, lineno)
            if tokens[1] not in blocks:
                raise self.error(f"未定义的超边: {tokens[1]}", source, lineno)
            names.append(tokens[1])
            attachments.append(attachment)
            pos += 1

        try:
            plan = SuperpositionPlan(
                base=base,
                superedges=tuple(blocks[name] for name in names),
                names=tuple(names),
                attachments=tuple(attachments),
            )
        except SnarkToolkitError as e:
            raise self.error(e.message, source, None) from None
        logger.debug(f"解析了叠加方案: {base.num_edges} 条基边，{len(blocks)} 种超边")
        return pos, plan

    # ------------------------------------------------------------------
    # 写出
    # ------------------------------------------------------------------

    def write(self, obj: Document) -> str:
        from ..superposition.construction import SuperpositionPlan

        if isinstance(obj, SuperpositionPlan):
            return "\n".join(self._plan_lines(obj)) + "\n"
        return "\n".join(self._body_lines(obj)) + "\n"

    @staticmethod
    def _connector_of(labels: Sequence[str], role: str) -> str:
        names = {split_label(label)[0] for label in labels}
        if len(names) != 1:
            raise FormatError(f"{role}连接器的标签必须共用一个连接器名: {list(labels)}")
        if list(labels) != sorted(labels, key=lambda l: split_label(l)[1]):
            raise FormatError(f"{role}连接器的标签必须按序号排列: {list(labels)}")
        return names.pop()

    def _body_lines(self, obj: Union[Multipole, Dipole], indent: str = "") -> List[str]:
        m = obj.base if isinstance(obj, Dipole) else obj
        lines = [f"{indent}multipole {m.num_vertices} {m.num_edges}"]
        if isinstance(obj, Dipole):
            in_conn = self._connector_of(obj.inputs, "输入")
            out_conn = self._connector_of(obj.outputs, "输出")
            if in_conn == out_conn:
                raise FormatError(f"输入和输出连接器同名: {in_conn}")
            lines.append(f"{indent}dipole {in_conn} {out_conn}")
        lines.extend(f"{indent}v {vertex}" for vertex in range(m.num_vertices))
        for edge in m.edges:
            if edge.v is None:
                lines.append(f"{indent}e v{edge.u} d:{edge.label}")
            else:
                lines.append(f"{indent}e v{edge.u} v{edge.v}")
        return lines

    def _plan_lines(self, plan) -> List[str]:
        lines = self._body_lines(plan.base)
        lines.append("plan")
        written: Dict[str, Dipole] = {}
        for name, dipole in zip(plan.names, plan.superedges):
            if not name or any(ch.isspace() for ch in name):
                raise FormatError(f"超边名称不能为空或含空白: {name!r}")
            if name in written:
                if written[name] != dipole:
                    raise FormatError(f"同名超边 {name} 对应不同的偶极子")
                continue
            written[name] = dipole
            lines.append(f"superedge {name}")
            lines.extend(self._body_lines(dipole, indent="  "))
            lines.append("end")
        for index, (name, attachment) in enumerate(zip(plan.names, plan.attachments)):
            lines.append(f"base-edge {index} {name} {' '.join(str(j) for j in attachment)}")
        return lines


_parser = MultipoleDocumentParser()


def parse_multipole(text: str, source: Optional[str] = None) -> Document:
    """解析多极子文档，返回 Multipole、Dipole 或 SuperpositionPlan"""
    return _parser.parse(text, source)


def write_multipole(obj: Document) -> str:
    """写出多极子文档"""
    return _parser.write(obj)
