"""
最短路树、弧前序标号与层祖先查询
"""
import math
from dataclasses import dataclass, field
from typing import Callable, List, Optional

from .graph import EmbeddedGraph
from ..errors import TreeNotSpanning


@dataclass
class ShortestPathTree:
    """以 root 为根的最短路树（多源种子时 root 为 None）"""
    graph: EmbeddedGraph
    root: Optional[int]
    dist: List
    parent_arc: List[int]
    order: List[int] = field(default_factory=list)
    _lifting: Optional['LevelAncestor'] = field(default=None, repr=False)

    def parent(self, v: int) -> int:
        a = self.parent_arc[v]
        return -1 if a < 0 else self.graph.tail[a]

    def is_tree_arc(self, e: int) -> bool:
        return self.parent_arc[self.graph.head[e]] == e

    def reached(self, v: int) -> bool:
        return self.dist[v] != math.inf

    def spans(self) -> bool:
        return all(d != math.inf for d in self.dist)

    def children(self, v: int) -> List[int]:
        return [self.graph.head[e] for e in self.graph.rotation[v] if self.is_tree_arc(e)]

    def path_to(self, v: int) -> List[int]:
        """根到 v 的弧序列"""
        arcs = []
        while self.parent_arc[v] >= 0:
            a = self.parent_arc[v]
            arcs.append(a)
            v = self.graph.tail[a]
        arcs.reverse()
        return arcs

    @property
    def lifting(self) -> 'LevelAncestor':
        if self._lifting is None:
            self._lifting = LevelAncestor(self)
        return self._lifting


def root_start_arc(g: EmbeddedGraph, root: int, hole: Optional[int]) -> Optional[int]:
    """根在洞 hole 上时，逆时针扫描从洞的角之后开始"""
    if hole is None:
        return None
    for a in g.rotation[root]:
        if g.left[a] == hole:
            return g.rot_next(a)
    return None


def preorder_arc_labels(t: ShortestPathTree, hole: Optional[int] = None) -> List[int]:
    """
    逆时针优先 DFS 给所有弧编号（1..m）
    非树弧作为虚拟叶子就地编号；指向父亲的弧在子树之后编号，
    所以 pre(pu) < 子树内所有标号 < pre(up)

    Args:
        t: 生成树
        hole: 根所在的洞（决定根处扫描的起点）

    Returns:
        labels[e]
    """
    g = t.graph
    if t.root is None or not t.spans():
        raise TreeNotSpanning("前序标号需要以单点为根的生成树")
    labels = [0] * g.m
    counter = 1

    first = root_start_arc(g, t.root, hole)
    stack = [[t.root, 0, g._pos[first] if first is not None else 0]]
    while stack:
        frame = stack[-1]
        v, j, s = frame
        rot = g.rotation[v]
        up = g.rev[t.parent_arc[v]] if t.parent_arc[v] >= 0 else -1
        if j < len(rot):
            frame[1] = j + 1
            a = rot[(s + j) % len(rot)]
            if a == up:
                continue
            labels[a] = counter
            counter += 1
            if t.is_tree_arc(a):
                child = g.head[a]
                stack.append([child, 0, g._pos[g.rev[a]] + 1])
        else:
            if up >= 0:
                labels[up] = counter
                counter += 1
            stack.pop()
    return labels


class LevelAncestor:
    """倍增跳表"""

    def __init__(self, t: ShortestPathTree):
        n = t.graph.n
        self.depth = [0] * n
        parent = [t.parent(v) for v in range(n)]
        order = t.order or self._bfs_order(t)
        for v in order:
            p = parent[v]
            self.depth[v] = self.depth[p] + 1 if p >= 0 else 0
        levels = max(1, max(self.depth, default=0).bit_length())
        self.jump = [parent]
        for _ in range(1, levels):
            prev = self.jump[-1]
            self.jump.append([prev[prev[v]] if prev[v] >= 0 else -1 for v in range(n)])

    @staticmethod
    def _bfs_order(t: ShortestPathTree) -> List[int]:
        order = [t.root]
        for v in order:
            order.extend(t.children(v))
        return order

    def ancestor(self, v: int, k: int) -> int:
        """v 的第 k 级祖先，不存在返回 -1"""
        level = 0
        while k and v >= 0:
            if k & 1:
                v = self.jump[level][v] if level < len(self.jump) else -1
            k >>= 1
            level += 1
        return v


def level_ancestor_search(t: ShortestPathTree, v: int, predicate: Callable[[int], bool]) -> Optional[int]:
    """
    在根到 v 的路径上找最靠近根且满足 predicate 的祖先
    predicate 在路径上单调：根附近为假，靠近 v 为真

    Returns:
        顶点，或 None（v 处也不满足）
    """
    if not predicate(v):
        return None
    jump = t.lifting.jump
    u = v
    for level in range(len(jump) - 1, -1, -1):
        a = jump[level][u]
        if a >= 0 and predicate(a):
            u = a
    return u
