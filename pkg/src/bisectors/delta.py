"""
站点预处理：每个站点一棵最短路树、弧前序标号，以及 δ^{uv}(p) = d(u,p) − d(v,p) 表

站点之间的并列用站点序号打破：key(s, p) = SITE_SCALE·(ω(s) + d(s,p)) + rank(s)
"""
import logging
import math
from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Sequence

from ..core.graph import EmbeddedGraph, pack
from ..core.cotree import Cotree
from ..core.trees import ShortestPathTree, preorder_arc_labels
from ..errors import SiteNotOnHole, SiteNotPreprocessed, BadParams, DisconnectedGraph
from ..paths.dijkstra import dijkstra
from ..settings import Counters

logger = logging.getLogger(__name__)

SITE_SCALE = 1 << 16


def hole_of_site(g: EmbeddedGraph, v: int) -> Optional[int]:
    """包含 v 的第一个洞"""
    for h in g.holes:
        if v in g.face_vertices(h):
            return h
    return None


@dataclass
class SiteData:
    site: int
    rank: int
    hole: Optional[int]
    tree: ShortestPathTree
    pre: List[int]
    cotree: Optional[Cotree] = None

    @property
    def dist(self) -> List:
        return self.tree.dist


class DeltaTable:
    """站点集合上的距离行与 δ 查询"""

    def __init__(self, graph: EmbeddedGraph, data: Sequence[SiteData]):
        self.graph = graph
        self.data: Dict[int, SiteData] = {d.site: d for d in data}
        self.sites: List[int] = [d.site for d in sorted(data, key=lambda d: d.rank)]
        self.rank: Dict[int, int] = {d.site: d.rank for d in data}

    def __contains__(self, s: int) -> bool:
        return s in self.data

    def site(self, s: int) -> SiteData:
        if s not in self.data:
            raise SiteNotPreprocessed(f"站点 {s} 未预处理")
        return self.data[s]

    def d(self, s: int, p: int):
        return self.site(s).dist[p]

    def delta(self, u: int, v: int, p: int):
        return self.site(u).dist[p] - self.site(v).dist[p]

    def row(self, u: int, v: int) -> List:
        du, dv = self.site(u).dist, self.site(v).dist
        return [a - b for a, b in zip(du, dv)]

    def key(self, s: int, p: int, weights: Mapping[int, int]) -> int:
        return SITE_SCALE * (weights[s] + self.data[s].dist[p]) + self.rank[s]

    def owner(self, p: int, weights: Mapping[int, int], sites: Sequence[int]) -> int:
        """sites 中加权距离最小者"""
        return min(sites, key=lambda s: self.key(s, p, weights))

    def alive(self, weights: Mapping[int, int], sites: Sequence[int]) -> List[int]:
        """Voronoi 区域非空的站点：当且仅当站点拥有自己"""
        return [s for s in sites if self.owner(s, weights, sites) == s]


def precompute_delta(p, sites: Sequence[int], counters: Optional[Counters] = None,
                     require_hole: bool = True, phi: Optional[Sequence[int]] = None) -> DeltaTable:
    """
    Args:
        p: piece（或直接给出的嵌入图）
        sites: 站点（局部编号）
        require_hole: 站点必须位于某个洞上
        phi: 势函数；余树的顶点标号为 d(s,p) + phi(p)

    Returns:
        DeltaTable

    Raises:
        SiteNotOnHole
    """
    g = getattr(p, 'graph', p)
    sites = sorted(set(sites))
    if len(sites) >= SITE_SCALE:
        raise BadParams(f"站点数 {len(sites)} 超过 {SITE_SCALE - 1}")
    data = []
    for rank, s in enumerate(sites):
        if not 0 <= s < g.n:
            raise BadParams(f"站点 {s} 越界")
        hole = hole_of_site(g, s)
        if hole is None and require_hole:
            raise SiteNotOnHole(f"站点 {s} 不在任何洞上")
        tree = dijkstra(g, s, counters=counters)
        if any(x == math.inf for x in tree.dist):
            raise DisconnectedGraph(f"站点 {s} 不能到达 piece 的所有顶点")
        root_face = hole if hole is not None else g.left[g.rotation[s][0]]
        labels = [d + pack(phi[q]) for q, d in enumerate(tree.dist)] if phi is not None else None
        data.append(SiteData(s, rank, hole, tree, preorder_arc_labels(tree, hole),
                             Cotree(g, tree, root_face, labels)))
    logger.debug(f"δ 表: {len(sites)} 个站点, {g.n} 个顶点")
    return DeltaTable(g, data)
