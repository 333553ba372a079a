"""
洞边界上的归属查询

一张 Voronoi 图在洞 h 上的归属只在边界段与 h 相邻的弧处改变；
把这些弧按洞的游走下标排好，任一洞上顶点的归属就是一次二分。
没有被任何段切开的洞整体属于同一个站点，用一次逐站点比较确定。
"""
import logging
from bisect import bisect_left
from typing import Dict, List, Optional, Tuple

from ..bisectors.family import hole_positions
from ..trichromatic.views import BisectorView

logger = logging.getLogger(__name__)


def segment_hole_arcs(vd, seg, h: int) -> List[int]:
    """段内与洞 h 相邻的弧（u→v 方向）"""
    part = vd.part(seg, seg.u)
    view = BisectorView([part], vd.index.counters)
    found = []
    for _, _, _, _, s0, s1, _ in view.windows(0, seg.count - 1):
        for pos in hole_positions(part.version, h, s0, s1, vd.index.counters):
            found.append(part.version.arc(pos, vd.index.counters))
    return found


class HoleOwners:
    """一张图在各个洞上的归属"""

    def __init__(self, vd):
        self.vd = vd
        self.index = vd.index
        self.cuts: Dict[int, List[Tuple[int, int]]] = {}
        self._uniform: Dict[int, int] = {}
        g = self.index.graph
        for h in g.holes:
            self.cuts[h] = []
        for seg in vd.all_segments():
            for h in g.holes:
                walk = self.index.walk_index(h)
                for e in segment_hole_arcs(vd, seg, h):
                    # 游走弧 w 的头顶点归属于切口之后
                    if g.left[e] == h:
                        self.cuts[h].append((walk[e], seg.v))
                    if g.right(e) == h:
                        self.cuts[h].append((walk[g.rev[e]], seg.u))
        for h in self.cuts:
            self.cuts[h].sort()
        self._keys = {h: [i for i, _ in cuts] for h, cuts in self.cuts.items()}

    def uniform(self, h: int) -> int:
        """没有切口的洞的唯一归属"""
        if h not in self._uniform:
            g = self.index.graph
            self.index.counters.site_scans += 1
            self._uniform[h] = self.index.table.owner(g.face_vertices(h)[0], self.vd.weights, self.vd.sites)
        return self._uniform[h]

    def owner_at(self, h: int, i: int) -> int:
        """洞 h 游走中第 i 个顶点的归属"""
        cuts = self.cuts[h]
        if not cuts:
            return self.uniform(h)
        j = bisect_left(self._keys[h], i) - 1
        return cuts[j][1]

    def owner_of(self, v: int, h: Optional[int] = None) -> int:
        """洞上顶点 v 的归属"""
        if h is None:
            h = self.index.table.site(v).hole if v in self.index.table else None
            if h is None:
                for hole in self.index.graph.holes:
                    if v in self.index.vertex_index(hole):
                        h = hole
                        break
        return self.owner_at(h, self.index.vertex_index(h)[v])

    def cut_indices(self, h: int) -> List[int]:
        return list(self._keys[h])


def corner_indices(index, e: int) -> Optional[Tuple[int, int, int]]:
    """
    与洞相邻的弧 e 的两个端点在洞游走中的下标

    Returns:
        (洞, tail(e) 的下标, head(e) 的下标)；e 不与洞相邻时为 None
    """
    g = index.graph
    if g.is_hole(g.left[e]):
        h = g.left[e]
        i = index.walk_index(h)[e]
        return h, i, (i + 1) % len(g.face_arcs[h])
    if g.is_hole(g.right(e)):
        h = g.right(e)
        i = index.walk_index(h)[g.rev[e]]
        return h, (i + 1) % len(g.face_arcs[h]), i
    return None
