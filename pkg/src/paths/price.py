"""
可行势函数：虚拟源点到所有点距离为 0 的 Bellman-Ford（队列版）
约化长度 len(uv) + φ(u) − φ(v) ≥ 0
"""
from collections import deque
from typing import List

from ..core.graph import EmbeddedGraph
from ..errors import NegativeCycle


def price_function(g: EmbeddedGraph) -> List[int]:
    """
    Returns:
        φ（整数，作用于 base 长度）

    Raises:
        NegativeCycle
    """
    phi = [0] * g.n
    if all(b >= 0 for b in g.base):
        return phi
    in_queue = [True] * g.n
    relax_count = [0] * g.n
    queue = deque(range(g.n))
    while queue:
        u = queue.popleft()
        in_queue[u] = False
        for e in g.rotation[u]:
            v = g.head[e]
            nd = phi[u] + g.base[e]
            if nd < phi[v]:
                phi[v] = nd
                relax_count[v] += 1
                if relax_count[v] > g.n:
                    raise NegativeCycle(f"经过顶点 {v} 存在负环")
                if not in_queue[v]:
                    in_queue[v] = True
                    queue.append(v)
    return phi


def reduce_lengths(g: EmbeddedGraph, phi: List[int]) -> EmbeddedGraph:
    """按势函数约化，扰动字保持不变"""
    return g.with_lengths([g.base[e] + phi[g.tail[e]] - phi[g.head[e]] for e in range(g.m)])
