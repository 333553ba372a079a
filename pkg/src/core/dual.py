"""对偶图：每个面一个对偶点，对偶弧 e* 从 left(e) 指向 right(e)"""
from typing import Iterable, List

from .graph import EmbeddedGraph


class DualGraph:
    """对偶图视图（不复制拓扑，只做索引）"""

    def __init__(self, g: EmbeddedGraph):
        self.g = g
        self.vertex_count = g.face_count

    def tail(self, e: int) -> int:
        return self.g.left[e]

    def head(self, e: int) -> int:
        return self.g.right(e)

    def out_arcs(self, f: int) -> List[int]:
        """f* 的出对偶弧 = 左侧为 f 的原弧"""
        return self.g.face_arcs[f]

    def degree(self, f: int) -> int:
        return len(self.g.face_arcs[f])

    def neighbours(self, f: int) -> List[int]:
        return [self.head(e) for e in self.g.face_arcs[f]]

    def is_cycle(self, arcs: Iterable[int]) -> bool:
        """判断一组对偶弧是否构成一个简单有向环（洞对偶点允许重复）"""
        arcs = list(arcs)
        if not arcs:
            return False
        out = {}
        into = {}
        for e in arcs:
            t, h = self.tail(e), self.head(e)
            if (t in out and not self.g.is_hole(t)) or (h in into and not self.g.is_hole(h)):
                return False
            out.setdefault(t, []).append(e)
            into.setdefault(h, []).append(e)
        if set(out) != set(into):
            return False
        # 连通性：沿对偶弧行走
        seen = {arcs[0]}
        stack = [arcs[0]]
        while stack:
            e = stack.pop()
            for nxt in out.get(self.head(e), []):
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        return len(seen) == len(arcs)


def compute_dual(g: EmbeddedGraph) -> DualGraph:
    return DualGraph(g)
