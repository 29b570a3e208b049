"""
PG(3,2) 与四面体

点是 GF(2)^4 的非零向量，用 1..15 的整数位掩码表示，加法是按位异或。
四面体由四个一般位置的角点张成，含 4 个角点、6 个中点和 6 条线；
每条线由两个角点及其中点组成。
"""

from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import combinations, permutations
from typing import Dict, FrozenSet, List, Optional, Tuple

from ..exceptions import DegenerateTetrahedronError, PointNotInTetrahedronError
from ..types import Shape

CANONICAL_CORNERS = (1, 2, 4, 8)


@lru_cache(maxsize=1)
def pg32_lines() -> FrozenSet[FrozenSet[int]]:
    """PG(3,2) 的 35 条线: 满足 x⊕y⊕z = 0 的不同非零三元组"""
    lines = set()
    for x in range(1, 16):
        for y in range(x + 1, 16):
            z = x ^ y
            if z > y:
                lines.add(frozenset((x, y, z)))
    return frozenset(lines)


@dataclass(frozen=True)
class Tetrahedron:
    """由四个角点张成的四面体"""
    corners: Tuple[int, int, int, int] = CANONICAL_CORNERS

    def __post_init__(self):
        corners = tuple(int(c) for c in self.corners)
        object.__setattr__(self, "corners", corners)
        if len(corners) != 4:
            raise DegenerateTetrahedronError(list(corners))
        for size in range(1, 5):
            for subset in combinations(corners, size):
                total = 0
                for point in subset:
                    total ^= point
                if total == 0 or any(not 0 < c < 16 for c in subset):
                    raise DegenerateTetrahedronError(list(corners))

    # ------------------------------------------------------------------
    # 点和线
    # ------------------------------------------------------------------

    @cached_property
    def _midpoint_pairs(self) -> Dict[int, Tuple[int, int]]:
        return {self.corners[i] ^ self.corners[j]: (i, j) for i, j in combinations(range(4), 2)}

    @cached_property
    def _corner_index(self) -> Dict[int, int]:
        return {c: i for i, c in enumerate(self.corners)}

    def midpoints(self) -> Tuple[int, ...]:
        return tuple(self.corners[i] ^ self.corners[j] for i, j in combinations(range(4), 2))

    def points(self) -> Tuple[int, ...]:
        """10 个点: 角点在前，中点按角点对的字典序"""
        return self.corners + self.midpoints()

    @cached_property
    def point_set(self) -> FrozenSet[int]:
        return frozenset(self.points())

    def lines(self) -> Tuple[FrozenSet[int], ...]:
        """6 条线 {c_i, c_j, c_i⊕c_j}"""
        return tuple(
            frozenset((self.corners[i], self.corners[j], self.corners[i] ^ self.corners[j]))
            for i, j in combinations(range(4), 2)
        )

    def contains(self, x: int) -> bool:
        return x in self.point_set

    def require(self, x: int) -> None:
        if x not in self.point_set:
            raise PointNotInTetrahedronError(x, list(self.corners))

    def is_corner(self, x: int) -> bool:
        self.require(x)
        return x in self._corner_index

    def corner_index(self, x: int) -> Optional[int]:
        return self._corner_index.get(x)

    def midpoint_pair(self, x: int) -> Optional[Tuple[int, int]]:
        """中点 c_i⊕c_j 对应的角点下标对 (i, j)"""
        return self._midpoint_pairs.get(x)

    @cached_property
    def third_table(self) -> Tuple[Tuple[int, ...], ...]:
        """
        16×16 补全表: 若 {x, y, z} 是四面体的一条线则 table[x][y] = z，否则为 0。

        两个中点的异或可能仍是中点，但三个中点不构成四面体的线，因此表中为 0。
        """
        table = [[0] * 16 for _ in range(16)]
        for line in self.lines():
            a, b, c = sorted(line)
            for x, y, z in ((a, b, c), (a, c, b), (b, c, a)):
                table[x][y] = z
                table[y][x] = z
        return tuple(tuple(row) for row in table)

    def is_line(self, x: int, y: int, z: int) -> bool:
        return self.third_table[x][y] == z and z != 0

    # ------------------------------------------------------------------
    # 对称性
    # ------------------------------------------------------------------

    @cached_property
    def corner_permutations(self) -> Tuple[Tuple[int, ...], ...]:
        """
        24 个角点置换的线性延拓，每个以长度 16 的点表给出（下标 0 映射到 0）。

        第一个是恒等映射。
        """
        tables = []
        for perm in permutations(range(4)):
            table = [0] * 16
            for x in range(1, 16):
                support = self.support(x)
                image = 0
                for i in support:
                    image ^= self.corners[perm[i]]
                table[x] = image
            tables.append(tuple(table))
        return tuple(tables)

    def support(self, x: int) -> Tuple[int, ...]:
        """x 在角点基下的坐标支撑集（角点下标）"""
        for size in range(1, 5):
            for subset in combinations(range(4), size):
                total = 0
                for i in subset:
                    total ^= self.corners[i]
                if total == x:
                    return subset
        raise PointNotInTetrahedronError(x, list(self.corners))


# ============================================================================
# 权重、形状和覆盖坐标
# ============================================================================

def tetrahedron(corners: Tuple[int, int, int, int] = CANONICAL_CORNERS) -> Tetrahedron:
    return Tetrahedron(tuple(corners))


def weight(T: Tetrahedron, x: int) -> int:
    """角点权重为 1，中点权重为 2"""
    return 1 if T.is_corner(x) else 2


def shape_of(T: Tetrahedron, x: int, y: int) -> Shape:
    """
    四面体点对 {x, y} 的形状。

    引发:
        PointNotInTetrahedronError: 点不属于四面体
    """
    T.require(x)
    T.require(y)
    if x == y:
        return Shape.DPT
    cx, cy = T.corner_index(x), T.corner_index(y)
    if cx is not None and cy is not None:
        return Shape.LS
    if cx is not None or cy is not None:
        corner = cx if cx is not None else cy
        pair = T.midpoint_pair(y if cx is not None else x)
        return Shape.HL if corner in pair else Shape.ALT
    if set(T.midpoint_pair(x)) & set(T.midpoint_pair(y)):
        return Shape.ANG
    return Shape.AX


def point_pairs(T: Tetrahedron) -> List[Tuple[int, int]]:
    """全部 55 个无序点对（含退化点对），以升序元组表示"""
    points = sorted(T.points())
    return [(x, y) for i, x in enumerate(points) for y in points[i:]]


def cover_coordinates(T: Tetrahedron, x: int) -> Tuple[int, int, int, int]:
    """
    x 的覆盖坐标: 第 i 位为 1 当且仅当取值 x 的边不在第 i 个完美匹配中。

    角点 c_i 对应 "只在 P_i 中"；中点 c_k⊕c_l 对应 "在 k、l 之外的两个匹配中"。
    这是角点基坐标的线性映射: bit_i = (|S| mod 2) ⊕ [i ∈ S]。
    """
    T.require(x)
    support = set(T.support(x))
    parity = len(support) % 2
    return tuple(parity ^ (1 if i in support else 0) for i in range(4))


def point_from_cover_coordinates(T: Tetrahedron, bits: Tuple[int, ...]) -> Optional[int]:
    """
    cover_coordinates 的逆映射；位向量不对应四面体的点时返回 None。

    恰有一个 0 位 i → 角点 c_i；恰有两个 0 位 i、j → 另外两个角点的中点。
    """
    zeros = [i for i, bit in enumerate(bits) if bit == 0]
    if len(zeros) == 1:
        return T.corners[zeros[0]]
    if len(zeros) == 2:
        k, l = [i for i in range(4) if i not in zeros]
        return T.corners[k] ^ T.corners[l]
    return None


def lines_with_one_midpoint(T: Tetrahedron) -> bool:
    """检查四面体的每条线恰好含一个中点"""
    return all(sum(1 for x in line if not T.is_corner(x)) == 1 for line in T.lines())
