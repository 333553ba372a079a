"""
加权 Voronoi 图
每对相邻站点 (u,v) 的边界保存为平分线版本上的若干段（u 侧游走序下标，可回绕）
"""
import logging
from collections import deque
from dataclasses import dataclass
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

from ..bisectors.family import Version
from ..core.graph import EmbeddedGraph, base_of
from ..errors import TraceStuck
from ..trichromatic.views import BisectorView, Part
from .preprocess import PieceIndex

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Segment:
    u: int
    v: int
    version: int
    start: int
    count: int

    @property
    def pair(self) -> Tuple[int, int]:
        return self.u, self.v


def view_segment(version: Version, near: int, k0: int, count: int) -> Segment:
    """从 near 一侧看的整版本视图中 [k0, k0+count) 这一段"""
    fam = version.family
    L = version.length
    start = k0 % L if near == fam.u else (L - k0 - count) % L
    return Segment(fam.u, fam.v, version.index, start, count)


def cyclic_runs(keep: List[bool]) -> List[Tuple[int, int]]:
    """布尔环上的极大真值段 (起点, 长度)"""
    L = len(keep)
    if all(keep):
        return [(0, L)] if L else []
    runs = []
    i = 0
    while i < L:
        if not keep[i]:
            i += 1
            continue
        j = i
        while j < L and keep[j]:
            j += 1
        runs.append((i, j - i))
        i = j
    if len(runs) > 1 and runs[0][0] == 0 and runs[-1][0] + runs[-1][1] == L:
        last = runs.pop()
        first = runs.pop(0)
        runs.insert(0, (last[0], last[1] + first[1]))
    return runs


def _linear(start: int, count: int, L: int) -> List[Tuple[int, int]]:
    end = start + count - 1
    if end < L:
        return [(start, end)]
    return [(start, L - 1), (0, end - L)]


def intersect_cyclic(first: Sequence[Tuple[int, int]], second: Sequence[Tuple[int, int]],
                     L: int) -> List[Tuple[int, int]]:
    """长度为 L 的环上两组区间 (起点, 长度) 的交"""
    pieces = []
    for a0, a1 in (p for s, c in first for p in _linear(s, c, L)):
        for b0, b1 in (p for s, c in second for p in _linear(s, c, L)):
            lo, hi = max(a0, b0), min(a1, b1)
            if lo <= hi:
                pieces.append((lo, hi))
    pieces.sort()
    merged: List[List[int]] = []
    for lo, hi in pieces:
        if merged and lo <= merged[-1][1] + 1:
            merged[-1][1] = max(merged[-1][1], hi)
        else:
            merged.append([lo, hi])
    if len(merged) == 1 and merged[0] == [0, L - 1]:
        return [(0, L)]
    if len(merged) > 1 and merged[0][0] == 0 and merged[-1][1] == L - 1:
        last = merged.pop()
        merged[0] = [last[0], merged[0][1] + L]
    return [(lo, hi - lo + 1) for lo, hi in merged]


class VoronoiDiagram:
    """VD*(S′, ω)：存活站点、每对站点的边界段"""

    def __init__(self, index: PieceIndex, sites: Sequence[int], weights: Mapping[int, int],
                 segments: Optional[Dict[Tuple[int, int], List[Segment]]] = None,
                 dead: Sequence[int] = ()):
        self.index = index
        self.sites = list(sites)
        self.weights = dict(weights)
        self.segments: Dict[Tuple[int, int], List[Segment]] = {
            k: v for k, v in (segments or {}).items() if v}
        self.dead = sorted(dead)
        self._owner: Optional[List[int]] = None
        self._dcel = None

    @property
    def graph(self) -> EmbeddedGraph:
        return self.index.graph

    @property
    def store(self):
        return self.index.store

    def version(self, seg: Segment) -> Version:
        return self.store.get(seg.u, seg.v).version(seg.version)

    def part(self, seg: Segment, near: int) -> Part:
        return Part(self.version(seg), seg.start, seg.count, flipped=(near == seg.v))

    def segment_arcs(self, seg: Segment) -> List[int]:
        """段内弧（u→v 方向，u 侧游走序）"""
        part = self.part(seg, seg.u)
        return [part.arc(k) for k in range(seg.count)]

    def all_segments(self) -> Iterator[Segment]:
        for pair in sorted(self.segments):
            yield from self.segments[pair]

    def edge_count(self) -> int:
        return sum(len(v) for v in self.segments.values())

    def neighbours(self, s: int) -> List[int]:
        return sorted({v if u == s else u for (u, v) in self.segments if s in (u, v)})

    @property
    def empty_cells(self) -> List[int]:
        return list(self.dead)

    # ---- 顶点归属 ----
    def boundary_arcs(self) -> set:
        g = self.graph
        arcs = set()
        for seg in self.all_segments():
            for e in self.segment_arcs(seg):
                arcs.add(e)
                arcs.add(g.rev[e])
        return arcs

    def assignment(self) -> List[int]:
        """
        每个顶点所属的站点：从站点出发不穿过边界弧的 BFS

        Returns:
            owner[p]
        """
        if self._owner is not None:
            return self._owner
        g = self.graph
        owner = [-1] * g.n
        cut = self.boundary_arcs()
        for s in self.sites:
            if owner[s] != -1:
                continue
            owner[s] = s
            queue = deque([s])
            while queue:
                x = queue.popleft()
                for e in g.rotation[x]:
                    if e in cut:
                        continue
                    y = g.head[e]
                    if owner[y] == -1:
                        owner[y] = s
                        queue.append(y)
        missing = [p for p in range(g.n) if owner[p] == -1]
        if missing:
            message = f"{len(missing)} 个顶点没有被 BFS 覆盖"
            if self.index.strict:
                raise TraceStuck(message)
            logger.warning(f"{message}，按距离补齐")
            self.index.counters.fallbacks += 1
            for p in missing:
                owner[p] = self.index.table.owner(p, self.weights, self.sites)
        self._owner = owner
        return owner

    # ---- 平面图结构 ----
    def dcel(self):
        if self._dcel is None:
            from .dcel import build_dcel
            self._dcel = build_dcel(self, strict=self.index.strict)
        return self._dcel

    def vertices(self) -> List[int]:
        """Voronoi 顶点（对偶面）"""
        return self.dcel().vertex_faces()

    def views(self, s: int) -> List[BisectorView]:
        """站点 s 的每个边界环作为一个视图"""
        dcel = self.dcel()
        return [BisectorView([dcel.halfedges[h].part for h in cycle], self.index.counters)
                for cycle in dcel.cycles.get(s, [])]

    def to_dict(self) -> dict:
        owner = self.assignment()
        cells: Dict[int, List[int]] = {s: [] for s in self.sites}
        for p, s in enumerate(owner):
            cells[s].append(p)
        return {
            'sites': self.sites,
            'weights': {str(k): base_of(v) for k, v in self.weights.items()},
            'cells': {str(s): ps for s, ps in cells.items()},
            'empty_cells': self.dead,
            'edges': [{'pair': [seg.u, seg.v], 'version': seg.version, 'start': seg.start,
                       'count': seg.count} for seg in self.all_segments()],
            'vertices': self.vertices(),
        }

    def __repr__(self):
        return f"<VoronoiDiagram sites={len(self.sites)} edges={self.edge_count()} dead={len(self.dead)}>"
