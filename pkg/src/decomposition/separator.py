"""
BFS 层 + 基本环分隔器（Lipton–Tarjan 风格的简化版本）
"""
import logging
import math
from collections import deque
from typing import Dict, Iterable, List, Optional, Sequence, Set

from ..core.graph import EmbeddedGraph

logger = logging.getLogger(__name__)

MAX_CYCLE_TRIES = 64


def adjacency_of(g: EmbeddedGraph, edges: Optional[Iterable[int]] = None) -> Dict[int, List[int]]:
    """无向邻接表；edges 为代表弧集合时只取这些边"""
    adj: Dict[int, List[int]] = {}
    arcs = g.edges() if edges is None else sorted(edges)
    for e in arcs:
        u, v = g.tail[e], g.head[e]
        adj.setdefault(u, [])
        adj.setdefault(v, [])
        if u != v:
            adj[u].append(v)
            adj[v].append(u)
    for v in adj:
        adj[v] = sorted(set(adj[v]))
    return adj


def components(adj: Dict[int, List[int]], removed: Set[int]) -> List[List[int]]:
    seen = set(removed)
    comps = []
    for s in sorted(adj):
        if s in seen:
            continue
        comp = [s]
        seen.add(s)
        for v in comp:
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    comp.append(w)
        comps.append(sorted(comp))
    return comps


def _max_part(adj, weights, sep: Set[int]) -> float:
    return max((sum(weights[v] for v in c) for c in components(adj, sep)), default=0)


def separator(g: EmbeddedGraph, weights: Optional[Dict[int, float]] = None,
              adj: Optional[Dict[int, List[int]]] = None) -> List[int]:
    """
    Args:
        g: 三角化的连通图
        weights: 顶点权重（默认全为 1）
        adj: 可选的子区域邻接表（r-division 递归时使用）

    Returns:
        分隔点列表（升序）
    """
    if adj is None:
        adj = adjacency_of(g)
    verts = sorted(adj)
    if len(verts) <= 3:
        return verts[:1]
    if weights is None:
        weights = {v: 1 for v in verts}
    total = sum(weights.get(v, 0) for v in verts)
    w = {v: weights.get(v, 0) for v in verts}
    N = len(verts)

    root = verts[0]
    level = {root: 0}
    parent = {root: None}
    levels = [[root]]
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for x in adj[v]:
            if x not in level:
                level[x] = level[v] + 1
                parent[x] = v
                if level[x] == len(levels):
                    levels.append([])
                levels[level[x]].append(x)
                queue.append(x)

    cum = 0
    m = 0
    for i, lv in enumerate(levels):
        cum += sum(w[v] for v in lv)
        if cum >= total / 2:
            m = i
            break
    if len(levels[m]) <= 2 * math.sqrt(2 * N):
        return sorted(levels[m])

    limit = math.sqrt(N)
    l0 = next((l for l in range(m, -1, -1) if len(levels[l]) <= limit), -1)
    l2 = next((l for l in range(m + 1, len(levels)) if len(levels[l]) <= limit), len(levels))
    outer = set()
    if l0 >= 0:
        outer |= set(levels[l0])
    if l2 < len(levels):
        outer |= set(levels[l2])
    middle_weight = sum(w[v] for l in range(l0 + 1, l2) for v in levels[l])
    if middle_weight <= 2 * total / 3 and outer:
        return sorted(outer)

    # 中间部分用基本环切开
    middle = {v for l in range(l0 + 1, l2) for v in levels[l]}
    candidates = []
    for v in sorted(middle):
        for x in adj[v]:
            if x in middle and v < x and parent.get(x) != v and parent.get(v) != x:
                candidates.append((v, x))
    if not candidates:
        return sorted(levels[m])
    step = max(1, len(candidates) // MAX_CYCLE_TRIES)
    best, best_part = None, math.inf
    for v, x in candidates[::step]:
        cycle = _fundamental_cycle(v, x, parent, level, l0)
        sep = outer | cycle
        part = _max_part(adj, w, sep)
        if part < best_part:
            best, best_part = sep, part
        if part <= 2 * total / 3:
            break
    logger.debug(f"分隔器: 基本环方案, 最大部分 {best_part}/{total}")
    return sorted(best)


def _fundamental_cycle(a: int, b: int, parent, level, floor: int) -> Set[int]:
    """树路径 a..lca..b 上层号大于 floor 的顶点"""
    cycle = set()
    x, y = a, b
    while x != y:
        if level[x] >= level[y]:
            if level[x] > floor:
                cycle.add(x)
            x = parent[x]
        else:
            if level[y] > floor:
                cycle.add(y)
            y = parent[y]
    if level[x] > floor:
        cycle.add(x)
    return cycle
