"""
多极子和偶极子的同构判定

每条悬挂边编码为一个挂在所连顶点上的叶子节点，叶子带有角色属性；
然后交给 networkx 的 VF2 匹配器。多重图匹配会比较边的重数。
"""

from typing import Union

import networkx as nx
from networkx.algorithms.isomorphism import categorical_node_match

from .core import Dipole, Multipole

_node_match = categorical_node_match("role", None)


def role_graph(x: Union[Multipole, Dipole], ordered_connectors: bool = True) -> nx.MultiGraph:
    """
    构造带角色的 networkx 多重图。

    参数:
        x: 多极子或偶极子
        ordered_connectors: 为 True 时输入/输出叶子的角色包含其在连接器中的位置
    """
    if isinstance(x, Dipole):
        base = x.base
        roles = {}
        for side, labels in (("in", x.inputs), ("out", x.outputs)):
            for position, label in enumerate(labels):
                roles[label] = f"{side}{position}" if ordered_connectors else side
    else:
        base = x
        roles = {label: "dangling" for label in base.dangling_labels}

    graph = nx.MultiGraph()
    for vertex in range(base.num_vertices):
        graph.add_node(("v", vertex), role="vertex")
    for edge in base.edges:
        if edge.v is None:
            leaf = ("d", edge.label)
            graph.add_node(leaf, role=roles[edge.label])
            graph.add_edge(("v", edge.u), leaf)
        else:
            graph.add_edge(("v", edge.u), ("v", edge.v))
    return graph


def are_isomorphic(
    a: Union[Multipole, Dipole],
    b: Union[Multipole, Dipole],
    ordered_connectors: bool = True
) -> bool:
    """判断两个多极子（或两个偶极子）是否同构，保持悬挂边角色"""
    if type(a) is not type(b):
        return False
    ga = role_graph(a, ordered_connectors)
    gb = role_graph(b, ordered_connectors)
    if ga.number_of_nodes() != gb.number_of_nodes() or ga.number_of_edges() != gb.number_of_edges():
        return False
    return nx.is_isomorphic(ga, gb, node_match=_node_match)
