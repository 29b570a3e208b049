"""
形状转移关系

关系是 Σ×Σ 的子集，Σ 是六种形状。序列化为排序后的 "s->t" 记号列表。
"""

from typing import FrozenSet, Iterable, List, Set

from ..exceptions import FormatError
from ..types import Shape, ShapeRelation, ShapeTransition

LS, HL, ANG, ALT, AX, DPT = Shape.LS, Shape.HL, Shape.ANG, Shape.ALT, Shape.AX, Shape.DPT


def relation(*pairs: ShapeTransition) -> ShapeRelation:
    return frozenset(pairs)


# 可容许转移
A: ShapeRelation = relation(
    (DPT, DPT), (HL, HL), (ALT, ALT), (AX, AX), (ANG, ANG), (ANG, LS), (LS, ANG), (LS, LS)
)

# 去共线子的转移
D: ShapeRelation = A - {(HL, HL), (LS, LS)}

Q: ShapeRelation = relation((HL, HL), (LS, LS), (ALT, ALT), (ANG, LS), (LS, ANG))

R: ShapeRelation = relation((LS, ANG), (ANG, LS), (ANG, ANG), (ALT, ALT))

# 去角子的转移上界
DEANGULATOR: ShapeRelation = A - {(ANG, ANG)}

NAMED_RELATIONS = {"A": A, "D": D, "Q": Q, "R": R}


def compose_relations(r1: Iterable[ShapeTransition], r2: Iterable[ShapeTransition]) -> ShapeRelation:
    """关系复合 {(p, t) : 存在 s 使 (p, s) ∈ r1 且 (s, t) ∈ r2}"""
    forward = {}
    for s, t in r2:
        forward.setdefault(s, set()).add(t)
    return frozenset((p, t) for p, s in r1 for t in forward.get(s, ()))


def bidirectional_transitions(r: Iterable[ShapeTransition]) -> FrozenSet[FrozenSet[Shape]]:
    """同时含 s→t 和 t→s 的无序形状对（s ≠ t），用于 ↔ 表示"""
    pairs = set(r)
    return frozenset(frozenset((s, t)) for s, t in pairs if s != t and (t, s) in pairs)


def format_relation(r: Iterable[ShapeTransition]) -> List[str]:
    """按形状声明顺序排序的 "s->t" 记号"""
    order = {shape: index for index, shape in enumerate(Shape)}
    return [f"{s.value}->{t.value}" for s, t in sorted(set(r), key=lambda st: (order[st[0]], order[st[1]]))]


def parse_relation(tokens: Iterable[str]) -> ShapeRelation:
    """
    解析 "s->t" 记号列表。

    引发:
        FormatError: 记号格式错误或形状未知
    """
    result: Set[ShapeTransition] = set()
    for token in tokens:
        left, arrow, right = token.partition("->")
        if not arrow:
            raise FormatError(f"无效的转移记号: {token!r}")
        try:
            result.add((Shape.from_token(left), Shape.from_token(right)))
        except ValueError:
            raise FormatError(f"未知的形状: {token!r}") from None
    return frozenset(result)
