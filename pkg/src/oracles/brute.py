"""
暴力参照实现：只依赖嵌入图与 Dijkstra
"""
from typing import Dict, List, Mapping, Sequence, Set, Union

from ..core.graph import EmbeddedGraph
from ..errors import BadParams
from ..paths.dijkstra import dijkstra

ORACLE_LIMIT = 5000
RANK_SCALE = 1 << 16


def _guard(g: EmbeddedGraph) -> None:
    if g.n > ORACLE_LIMIT:
        raise BadParams(f"暴力参照只接受 n ≤ {ORACLE_LIMIT}，当前 n={g.n}")


def apsp_oracle(g: EmbeddedGraph) -> List[List]:
    """所有点对最短路（不可达为 inf）"""
    _guard(g)
    return [dijkstra(g, s, check_ties=False).dist for s in range(g.n)]


def vd_oracle(g: EmbeddedGraph, sites: Sequence[int], weights: Mapping[int, int]) -> List[int]:
    """
    每个顶点的加权最近站点；并列按站点编号从小到大打破

    Returns:
        owner[p]
    """
    _guard(g)
    sites = sorted(set(sites))
    rows = {s: dijkstra(g, s, check_ties=False).dist for s in sites}
    rank = {s: i for i, s in enumerate(sites)}
    return [min(sites, key=lambda s: RANK_SCALE * (weights[s] + rows[s][p]) + rank[s])
            for p in range(g.n)]


def bisector_oracle(g: EmbeddedGraph, u: int, v: int, delta: int) -> Set[int]:
    """两站点图（ω(u)=0, ω(v)=delta）中尾属于 u、头属于 v 的弧"""
    owner = vd_oracle(g, [u, v], {u: 0, v: delta})
    return {e for e in range(g.m) if owner[g.tail[e]] == u and owner[g.head[e]] == v}


def tri_oracle(g: EmbeddedGraph, groups: Sequence[Union[int, Sequence[int]]],
               weights: Mapping[int, int]) -> Set[int]:
    """
    与三个单元（或三组单元）都相邻的面

    Args:
        groups: 三个站点，或三组站点
    """
    if len(groups) != 3:
        raise BadParams("三色判定需要恰好三组站点")
    sets = [{x} if isinstance(x, int) else set(x) for x in groups]
    owner = vd_oracle(g, sorted(set().union(*sets)), weights)
    found = set()
    for f in range(g.face_count):
        touched = {owner[p] for p in g.face_vertices(f)}
        if all(touched & s for s in sets):
            found.add(f)
    return found


def farthest_oracle(g: EmbeddedGraph, sites: Sequence[int], weights: Mapping[int, int]) -> Dict[int, tuple]:
    """每个站点单元内的 (最远距离, 顶点)，并列取编号大者"""
    owner = vd_oracle(g, sites, weights)
    result: Dict[int, tuple] = {}
    for s in set(owner):
        dist = dijkstra(g, s, check_ties=False).dist
        result[s] = max((dist[p], p) for p in range(g.n) if owner[p] == s)
    return result


def survivors_oracle(view, table, thirds: Sequence[int], weights: Mapping[int, int]) -> List[int]:
    """
    视图中两端点都不被 thirds 夺走的弧（线性扫描）

    Returns:
        视图下标
    """
    kept = []
    g = table.graph
    for k in range(len(view)):
        near, far = view.sites(k)
        e = view.arc(k)
        x, y = g.tail[e], g.head[e]
        if all(table.key(t, x, weights) > table.key(near, x, weights)
               and table.key(t, y, weights) > table.key(far, y, weights) for t in thirds):
            kept.append(k)
    return kept
