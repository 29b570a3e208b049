"""
随机三正则多重图与随机 (2,2)-极子

用配置模型抽取三正则多重图，拒绝带自环或不连通的样本，
再用 same-edge 策略切断两条随机边。给定种子时结果可复现。
"""

import random
from typing import List, Optional

import networkx as nx

from ..config import config
from ..exceptions import InvalidMultipoleError
from ..monitoring.logger import setup_logger
from ..types import SeverPolicy
from .core import Dipole, Multipole, sever

logger = setup_logger(__name__)

MAX_ATTEMPTS = 1000


def random_cubic_multigraph(n: int, rng: random.Random) -> Multipole:
    """
    抽取 n 个顶点的连通无自环三正则多重图。

    参数:
        n: 顶点数（正偶数）
        rng: 随机数发生器
    """
    if n <= 0 or n % 2:
        raise InvalidMultipoleError(f"三正则图的顶点数必须是正偶数: {n}")

    for attempt in range(MAX_ATTEMPTS):
        sample = nx.configuration_model([3] * n, seed=rng.randrange(2 ** 32))
        if nx.number_of_selfloops(sample) or not nx.is_connected(sample):
            continue
        pairs = sorted((min(u, v), max(u, v)) for u, v in sample.edges())
        return Multipole.from_edge_list(n, pairs)

    raise InvalidMultipoleError(f"{MAX_ATTEMPTS} 次尝试后仍未得到无自环的连通样本 (n={n})")


def random_dipole(rng: random.Random, max_vertices: Optional[int] = None, min_vertices: int = 2) -> Dipole:
    """抽取顶点数不超过 max_vertices 的随机 (2,2)-极子"""
    if max_vertices is None:
        max_vertices = config.search.RANDOM_DIPOLE_MAX_VERTICES
    sizes = [n for n in range(max(2, min_vertices), max_vertices + 1) if n % 2 == 0]
    if not sizes:
        raise InvalidMultipoleError(f"顶点数范围为空: [{min_vertices}, {max_vertices}]")
    n = rng.choice(sizes)
    graph = random_cubic_multigraph(n, rng)
    cuts = rng.sample(range(graph.num_edges), 2)
    return sever(graph, cuts, SeverPolicy.SAME_EDGE)


def random_dipoles(count: int, seed: Optional[int] = None, max_vertices: Optional[int] = None) -> List[Dipole]:
    """生成 count 个可复现的随机 (2,2)-极子"""
    rng = random.Random(config.search.SEED if seed is None else seed)
    dipoles = [random_dipole(rng, max_vertices) for _ in range(count)]
    logger.debug(f"生成了 {count} 个随机偶极子 (种子 {seed})")
    return dipoles
