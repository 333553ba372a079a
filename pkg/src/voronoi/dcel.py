"""
半边结构：每个边界段对应两条半边（两侧站点各一条），
同一站点的半边按边界游走首尾相接成环；允许自环与平行边

半边在洞处一律切开。后继由终点面决定：
三角面上同一站点至多一条半边从该面出发；洞上取游走中位于终点之前最近的那条
"""
import logging
from bisect import bisect_left
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from ..errors import TraceStuck
from ..trichromatic.views import BisectorView, Part

logger = logging.getLogger(__name__)


@dataclass
class HalfEdge:
    site: int
    other: int
    part: Part
    first: int                 # 首弧（site → other 方向）
    last: int
    next: int = -1
    face: int = -1             # 与下一条半边之间的对偶顶点


class DCEL:
    def __init__(self, halfedges: List[HalfEdge], cycles: Dict[int, List[List[int]]], fallbacks: int):
        self.halfedges = halfedges
        self.cycles = cycles
        self.fallbacks = fallbacks

    def vertex_faces(self) -> List[int]:
        """相邻半边的另一侧站点不同、或经过洞的连接面"""
        faces = set()
        for h in self.halfedges:
            if h.next < 0:
                continue
            nxt = self.halfedges[h.next]
            if nxt.other != h.other or h.part.family.graph.is_hole(h.face):
                faces.add(h.face)
        return sorted(faces)


def _split_at_holes(part: Part, counters) -> List[Part]:
    g = part.family.graph
    view = BisectorView([part], counters)
    cuts = sorted({j for h in g.holes for j in view.face_positions(h) if j < part.count - 1})
    pieces, i0 = [], 0
    for j in cuts + [part.count - 1]:
        pieces.append(part.slice(i0, j))
        i0 = j + 1
    return pieces


def build_dcel(vd, strict: bool = False) -> DCEL:
    """
    Args:
        vd: VoronoiDiagram
        strict: 找不到后继半边时抛出 TraceStuck

    Returns:
        DCEL
    """
    g = vd.graph
    index = vd.index
    counters = index.counters
    halfedges: List[HalfEdge] = []
    starts: Dict[Tuple[int, int], int] = {}
    hole_starts: Dict[Tuple[int, int], List[Tuple[int, int]]] = {}
    for seg in vd.all_segments():
        for site, other in ((seg.u, seg.v), (seg.v, seg.u)):
            for part in _split_at_holes(vd.part(seg, site), counters):
                h = HalfEdge(site, other, part, part.arc(0, counters), part.arc(part.count - 1, counters))
                i = len(halfedges)
                halfedges.append(h)
                origin = g.right(h.first)
                if g.is_hole(origin):
                    walk = index.walk_index(origin)
                    hole_starts.setdefault((site, origin), []).append((walk[g.rev[h.first]], i))
                else:
                    starts.setdefault((site, origin), i)
    for entries in hole_starts.values():
        entries.sort()

    fallbacks = 0
    for h in halfedges:
        h.face = g.left[h.last]
        j = _successor(h, g, index, starts, hole_starts)
        if j is None:
            message = f"站点 {h.site} 的边界在面 {h.face} 之后找不到后继半边"
            if strict:
                raise TraceStuck(message)
            logger.warning(message)
            fallbacks += 1
            j = _linear_search(halfedges, h.site, h.face, g)
        h.next = -1 if j is None else j

    cycles: Dict[int, List[List[int]]] = {}
    seen = [False] * len(halfedges)
    for i in range(len(halfedges)):
        if seen[i]:
            continue
        cycle = []
        j = i
        while j >= 0 and not seen[j]:
            seen[j] = True
            cycle.append(j)
            j = halfedges[j].next
        cycles.setdefault(halfedges[i].site, []).append(cycle)
    if fallbacks:
        counters.fallbacks += fallbacks
    logger.debug(f"DCEL: {len(halfedges)} 条半边, {sum(len(c) for c in cycles.values())} 个环")
    return DCEL(halfedges, cycles, fallbacks)


def _successor(h: HalfEdge, g, index, starts, hole_starts) -> Optional[int]:
    if not g.is_hole(h.face):
        return starts.get((h.site, h.face))
    entries = hole_starts.get((h.site, h.face))
    if not entries:
        return None
    at = index.walk_index(h.face)[h.last]
    k = bisect_left(entries, (at, -1)) - 1
    return entries[k][1]


def _linear_search(halfedges: List[HalfEdge], site: int, face: int, g) -> Optional[int]:
    """同一站点中任一条从 face 出发的半边"""
    for j, h in enumerate(halfedges):
        if h.site == site and g.right(h.first) == face:
            return j
    return None
