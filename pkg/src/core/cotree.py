"""
余树 T*：非树边的对偶构成对偶生成树，根为指定洞的对偶点
附带子树最大标号、到各洞的深度、洞骨架 T*_H 及其欧拉序区间最大值，
以及每个洞面环上的角标号与悬挂子树的区间最大值
面标号为面上所有顶点标号的最大值（洞也一样）
"""
import math
from bisect import bisect_left
from collections import deque
from typing import Dict, List, Optional, Sequence, Tuple

from .graph import EmbeddedGraph
from .rmq import RangeMax
from .trees import ShortestPathTree
from ..errors import TreeNotSpanning

NO_LABEL = (-math.inf, -1)


class Cotree:
    """以 root_hole 为根的余树"""

    def __init__(self, g: EmbeddedGraph, t: ShortestPathTree, root_hole: int,
                 vertex_labels: Optional[Sequence] = None):
        if not t.spans():
            raise TreeNotSpanning("余树需要生成树")
        self.g = g
        self.tree = t
        self.root = root_hole
        F = g.face_count
        labels = list(vertex_labels) if vertex_labels is not None else list(t.dist)
        self.vertex_label = [(labels[v], v) for v in range(g.n)]

        self.parent = [-1] * F
        self.parent_edge = [-1] * F       # 弧 a: left(a)=父, right(a)=子
        self.children: List[List[int]] = [[] for _ in range(F)]
        self.order: List[int] = []
        seen = [False] * F
        seen[root_hole] = True
        queue = deque([root_hole])
        while queue:
            f = queue.popleft()
            self.order.append(f)
            for a in g.face_arcs[f]:
                if t.is_tree_arc(a) or t.is_tree_arc(g.rev[a]):
                    continue
                h = g.right(a)
                if not seen[h]:
                    seen[h] = True
                    self.parent[h] = f
                    self.parent_edge[h] = a
                    self.children[f].append(h)
                    queue.append(h)
        if len(self.order) != F:
            raise TreeNotSpanning(f"余树只覆盖 {len(self.order)}/{F} 个面")
        self.edge_count = F - 1

        # 面标号与子树最大
        self.face_label = [max(self.vertex_label[v] for v in g.face_vertices(f)) for f in range(F)]
        self.subtree_max = list(self.face_label)
        for f in reversed(self.order):
            p = self.parent[f]
            if p >= 0 and self.subtree_max[f] > self.subtree_max[p]:
                self.subtree_max[p] = self.subtree_max[f]

        self.depth = [0] * F
        for f in self.order[1:]:
            self.depth[f] = self.depth[self.parent[f]] + 1
        self._euler()
        self.hole_depth = [self._distances_from(h) for h in g.holes]
        self._skeleton()
        self._hole_rmq()

    # ---- 欧拉序（整棵树，用于祖先判断） ----
    def _euler(self) -> None:
        F = self.g.face_count
        self.tin = [0] * F
        self.tout = [0] * F
        clock = 0
        stack = [(self.root, False)]
        while stack:
            f, done = stack.pop()
            if done:
                self.tout[f] = clock - 1
                continue
            self.tin[f] = clock
            clock += 1
            stack.append((f, True))
            for c in reversed(self.children[f]):
                stack.append((c, False))

    def is_ancestor(self, a: int, b: int) -> bool:
        """a 是否为 b 的祖先（含相等）"""
        return self.tin[a] <= self.tin[b] <= self.tout[a]

    def _distances_from(self, h: int) -> List[int]:
        """树上每个面到 h* 的边数"""
        F = self.g.face_count
        dist = [-1] * F
        dist[h] = 0
        queue = deque([h])
        while queue:
            f = queue.popleft()
            nbrs = list(self.children[f])
            if self.parent[f] >= 0:
                nbrs.append(self.parent[f])
            for x in nbrs:
                if dist[x] < 0:
                    dist[x] = dist[f] + 1
                    queue.append(x)
        return dist

    def in_tree(self, a: int) -> bool:
        """a* 是否为余树边（与方向无关）"""
        g = self.g
        return self.parent_edge[g.right(a)] == a or self.parent_edge[g.left[a]] == g.rev[a]

    # ---- 洞骨架 ----
    def _skeleton(self) -> None:
        F = self.g.face_count
        self.in_skeleton = [False] * F
        for h in self.g.holes:
            f = h
            while f >= 0 and not self.in_skeleton[f]:
                self.in_skeleton[f] = True
                f = self.parent[f]
        # 压缩值：自身标号 + 悬挂在其上的非骨架子树
        self.contracted: Dict[int, Tuple] = {}
        for f in range(F):
            if not self.in_skeleton[f]:
                continue
            best = self.face_label[f]
            for c in self.children[f]:
                if not self.in_skeleton[c] and self.subtree_max[c] > best:
                    best = self.subtree_max[c]
            self.contracted[f] = best
        # 骨架欧拉序
        self.sk_tin: Dict[int, int] = {}
        self.sk_tout: Dict[int, int] = {}
        tour: List = []
        stack = [(self.root, False)]
        while stack:
            f, done = stack.pop()
            if done:
                self.sk_tout[f] = len(tour) - 1
                continue
            self.sk_tin[f] = len(tour)
            tour.append(self.contracted[f])
            stack.append((f, True))
            for c in reversed(self.children[f]):
                if self.in_skeleton[c]:
                    stack.append((c, False))
        self.skeleton_rmq = RangeMax(tour)
        self.skeleton_leaves = sum(
            1 for f in self.contracted if not any(self.in_skeleton[c] for c in self.children[f]))

    def subtree_exclusion_max(self, top: int, excluded: Sequence[int]):
        """max(subtree_H(top) 去掉 ∪ subtree_H(x))，x 须为 top 的骨架后代"""
        lo, hi = self.sk_tin[top], self.sk_tout[top]
        cuts = sorted((self.sk_tin[x], self.sk_tout[x]) for x in excluded)
        best = NO_LABEL
        cursor = lo
        for a, b in cuts:
            if a < cursor:
                continue
            if a > cursor:
                _, val = self.skeleton_rmq.query(cursor, a - 1)
                best = max(best, val)
            cursor = b + 1
        if cursor <= hi:
            _, val = self.skeleton_rmq.query(cursor, hi)
            best = max(best, val)
        return best

    # ---- 对偶边分类 ----
    def child_across(self, a: int) -> int:
        """a* 为余树边时返回其子端面，否则 -1"""
        g = self.g
        if self.parent_edge[g.right(a)] == a:
            return g.right(a)
        if self.parent_edge[g.left[a]] == g.rev[a]:
            return g.left[a]
        return -1

    def hanging_label(self, a: int):
        """left(a) 为父、a* 为余树边且子端不在骨架上时，子树最大标号；否则 NO_LABEL"""
        child = self.g.right(a)
        if self.parent_edge[child] == a and not self.in_skeleton[child]:
            return self.subtree_max[child]
        return NO_LABEL

    def in_skeleton_edge(self, a: int) -> bool:
        """a* 是否为 T*_H 的边"""
        child = self.child_across(a)
        return child >= 0 and self.in_skeleton[child]

    def is_skeleton_descendant(self, top: int, f: int) -> bool:
        return (f in self.sk_tin and top in self.sk_tin
                and self.sk_tin[top] <= self.sk_tin[f] <= self.sk_tout[top])

    # ---- 洞关联边与角 ----
    def _hole_rmq(self) -> None:
        g = self.g
        self.hole_rmq: Dict[int, RangeMax] = {}
        self.hole_corner_rmq: Dict[int, RangeMax] = {}
        self.hole_position: Dict[int, Dict[int, int]] = {}
        self.hole_skeleton: Dict[int, List[int]] = {}
        for h in g.holes:
            walk = g.face_arcs[h]
            self.hole_rmq[h] = RangeMax([self.hanging_label(a) for a in walk])
            self.hole_corner_rmq[h] = RangeMax([self.vertex_label[g.tail[a]] for a in walk])
            self.hole_position[h] = {a: i for i, a in enumerate(walk)}
            self.hole_skeleton[h] = [i for i, a in enumerate(walk) if self.in_skeleton_edge(a)]

    @staticmethod
    def _cyclic_query(rmq: RangeMax, lo: int, hi: int):
        L = len(rmq)
        lo %= L
        hi %= L
        if lo <= hi:
            return rmq.query(lo, hi)[1]
        return max(rmq.query(lo, L - 1)[1], rmq.query(0, hi)[1])

    def hole_fan_max(self, h: int, lo: int, hi: int):
        """洞 h 面环上边下标 lo..hi（循环、闭区间）悬挂子树的最大值"""
        return self._cyclic_query(self.hole_rmq[h], lo, hi)

    def hole_corner_max(self, h: int, lo: int, hi: int):
        """洞 h 面环上角下标 lo..hi（循环、闭区间）的最大顶点标号"""
        return self._cyclic_query(self.hole_corner_rmq[h], lo, hi)

    def hole_skeleton_in(self, h: int, lo: int, count: int) -> List[int]:
        """从 lo 起 count 条边（循环）中属于 T*_H 的边下标"""
        if count <= 0:
            return []
        L = len(self.g.face_arcs[h])
        positions = self.hole_skeleton[h]
        if count >= L:
            return list(positions)
        lo %= L
        hi = lo + count - 1
        found = [i for i in positions[bisect_left(positions, lo):] if i <= hi]
        if hi >= L:
            found += [i for i in positions[:bisect_left(positions, hi - L + 1)]]
        return found


def cotree(g: EmbeddedGraph, t: ShortestPathTree, root_hole: int, vertex_labels=None) -> Cotree:
    return Cotree(g, t, root_hole, vertex_labels)
