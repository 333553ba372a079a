"""
Dijkstra 单源最短路（支持多点种子）
"""
import math
from typing import Dict, Optional

from ..core.graph import EmbeddedGraph
from ..core.trees import ShortestPathTree
from ..errors import NegativeArc, TieDetected
from ..settings import Counters
from .heap import QuadHeap


def dijkstra(g: EmbeddedGraph, source: Optional[int] = None, initial: Optional[Dict[int, int]] = None,
             counters: Optional[Counters] = None, check_ties: Optional[bool] = None) -> ShortestPathTree:
    """
    Args:
        g: 非负长度的图
        source: 源点
        initial: 种子距离 {顶点: 距离}，与 source 二选一
        counters: 计数器
        check_ties: 是否检查等长的替代路径；默认在图带扰动时检查

    Returns:
        ShortestPathTree，不可达点距离为 inf
    """
    if any(x < 0 for x in g.length):
        raise NegativeArc("存在负长度弧，请先应用势函数")
    if check_ties is None:
        check_ties = any(g.tiebreak)
    if counters is not None:
        counters.dijkstra += 1

    dist = [math.inf] * g.n
    parent = [-1] * g.n
    done = [False] * g.n
    seeded = []
    seeds = dict(initial or {})
    if source is not None:
        seeds[source] = 0
    for v, d in seeds.items():
        if d < dist[v]:
            dist[v] = d
            seeded.append((d, v))
    heap = QuadHeap(seeded)

    order = []
    length, head, rotation = g.length, g.head, g.rotation
    while heap:
        d, u = heap.pop()
        if done[u] or d > dist[u]:
            continue
        done[u] = True
        order.append(u)
        for e in rotation[u]:
            v = head[e]
            nd = d + length[e]
            if nd < dist[v]:
                dist[v] = nd
                parent[v] = e
                heap.push((nd, v))
            elif check_ties and nd == dist[v] and parent[v] != e:
                raise TieDetected(f"到顶点 {v} 存在等长的两条路径")

    root = source if source is not None and len(seeds) == 1 else None
    return ShortestPathTree(g, root, dist, parent, order)
