"""
合并两张 Voronoi 图：VD(G) + VD(R) -> VD(G ∪ R)

第一步：在每个洞上叠加两张图的归属，颜色（G 或 R）改变处就是 β*(G,R) 与洞相邻的弧
第二步：从每条进入弧出发沿 β*(g,r) 追踪；下一个事件取最近的一个：
    离开 Vor_G(g)    tri_vertices_ext(r; g, G 中 g 的邻居)
    离开 Vor_R(r)    tri_vertices_ext(g; r, R 中 r 的邻居)
    到达洞
收尾：两张子图的边界段在事件面与洞处切开，逐段判定存活
β*(G,R) 不经过任何洞时（自由环），沿一条最短路二分找到种子弧再追踪
"""
import logging
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple

from ..errors import TraceStuck
from ..bisectors.family import hole_positions
from ..trichromatic.search import TriQuery, tri_vertices_ext
from ..trichromatic.views import BisectorView
from .diagram import Segment, VoronoiDiagram, cyclic_runs, view_segment
from .holes import HoleOwners, corner_indices

logger = logging.getLogger(__name__)


class _Pieces:
    """并查集：同一个未被穿过的 Voronoi 顶点两侧的段同生同死"""

    def __init__(self):
        self.parent: List[int] = []
        self.status: List[Optional[bool]] = []

    def add(self, status: Optional[bool]) -> int:
        self.parent.append(len(self.parent))
        self.status.append(status)
        return len(self.parent) - 1

    def find(self, i: int) -> int:
        while self.parent[i] != i:
            self.parent[i] = self.parent[self.parent[i]]
            i = self.parent[i]
        return i

    def union(self, i: int, j: int) -> None:
        a, b = self.find(i), self.find(j)
        if a == b:
            return
        self.parent[b] = a
        if self.status[a] is None:
            self.status[a] = self.status[b]


class Merger:
    """一次合并的全部状态"""

    def __init__(self, green: VoronoiDiagram, red: VoronoiDiagram):
        self.index = green.index
        self.green, self.red = green, red
        self.weights = dict(green.weights)
        self.weights.update(red.weights)
        self.table = self.index.table
        self.store = self.index.store
        self.graph = self.index.graph
        self.counters = self.index.counters
        self.strict = self.index.strict
        self.owners_g = HoleOwners(green)
        self.owners_r = HoleOwners(red)
        # 单色段上的切点：站点对 -> {面: 夺走它的另一组站点}
        self.cuts_g: Dict[Tuple[int, int], Dict[int, int]] = {}
        self.cuts_r: Dict[Tuple[int, int], Dict[int, int]] = {}
        self.cross: List[Segment] = []
        self._views: Dict[Tuple[int, int], BisectorView] = {}
        self._exits: Dict[Tuple[str, int, int], list] = {}
        self._incidences: Dict[Tuple[int, int, int], List[int]] = {}
        self.steps = 0
        self.budget = 4 * (len(green.sites) + len(red.sites)) + 8

    def key(self, s: int, p: int) -> int:
        return self.table.key(s, p, self.weights)

    def view(self, g: int, r: int) -> BisectorView:
        """β*(g,r) 当前版本，从 g 一侧看"""
        if (g, r) not in self._views:
            version = self.store.get(g, r).version_for(self.weights)
            self._views[(g, r)] = BisectorView.of_version(version, near=g, counters=self.counters)
        return self._views[(g, r)]

    # ---- 第一步 ----
    def incidences(self, g: int, r: int, h: int) -> List[int]:
        """β*(g,r) 与洞 h 相邻的弧在洞游走中的下标"""
        key = (g, r, h)
        if key not in self._incidences:
            version = self.store.get(g, r).version_for(self.weights)
            walk = self.index.walk_index(h)
            found = []
            for pos in hole_positions(version, h, counters=self.counters):
                e = version.arc(pos, self.counters)
                if self.graph.left[e] == h:
                    found.append(walk[e])
                if self.graph.right(e) == h:
                    found.append(walk[self.graph.rev[e]])
            self._incidences[key] = sorted(found)
        return self._incidences[key]

    def hole_crossings(self) -> Tuple[List[Tuple[int, int, int]], int]:
        """
        β*_I(G,R)

        Returns:
            (进入弧列表 [(g, r, 弧 g→r)], 离开弧个数)
        """
        g = self.graph
        entering, leaving = [], 0
        for h in g.holes:
            walk = g.face_arcs[h]
            verts = g.face_vertices(h)
            m = len(walk)
            delimiters = sorted(set(self.owners_g.cut_indices(h)) | set(self.owners_r.cut_indices(h)))
            candidates = set(delimiters)
            if not delimiters:
                pair = (self.owners_g.owner_at(h, 0), self.owners_r.owner_at(h, 0))
                candidates.update(self.incidences(pair[0], pair[1], h))
            for k, d in enumerate(delimiters):
                gap = (delimiters[(k + 1) % len(delimiters)] - d) % m or m
                first = (d + 1) % m
                pair = (self.owners_g.owner_at(h, first), self.owners_r.owner_at(h, first))
                for i in self.incidences(pair[0], pair[1], h):
                    if 0 < (i - d) % m < gap:
                        candidates.add(i)
            for i in sorted(candidates):
                j = (i + 1) % m
                x, y = verts[i], verts[j]
                gx, rx = self.owners_g.owner_at(h, i), self.owners_r.owner_at(h, i)
                gy, ry = self.owners_g.owner_at(h, j), self.owners_r.owner_at(h, j)
                x_green = self.key(gx, x) < self.key(rx, x)
                y_green = self.key(gy, y) < self.key(ry, y)
                if x_green == y_green:
                    continue
                if x_green:
                    leaving += 1
                else:
                    entering.append((gy, rx, g.rev[walk[i]]))
        return entering, leaving

    # ---- 第二步 ----
    def exits(self, side: str, g: int, r: int) -> list:
        """β*(g,r) 离开 g 在 VD(G) 中的单元（side='g'）或 r 在 VD(R) 中的单元（side='r'）的顶点"""
        key = (side, g, r)
        if key in self._exits:
            return self._exits[key]
        own, other, vd = (g, r, self.green) if side == 'g' else (r, g, self.red)
        neighbours = tuple(vd.neighbours(own))
        found = []
        if neighbours:
            views = vd.views(own)
            q = TriQuery(self.store, other, own, neighbours, self.weights, views,
                         counters=self.counters, strict=self.strict)
            found = [v for v in tri_vertices_ext(q).vertices if not v.hole]
        self._exits[key] = found
        return found

    def locate(self, view: BisectorView, arc: int) -> int:
        part = view.parts[0]
        pos = part.version.position_of(arc, self.counters)
        k = view.index_of_storage(0, pos)
        if k is None or view.arc(k) != arc:
            raise TraceStuck(f"弧 {arc} 不在 β*({part.near},{part.far}) 上")
        return k

    def next_event(self, g: int, r: int, k0: int, stop) -> Tuple[int, str, Optional[int]]:
        """从第 k0 条弧起最近的事件：(junction 下标, 类型, 第三个站点)"""
        view = self.view(g, r)
        L = len(view)
        best = None

        def offer(j: int, kind: str, third: Optional[int]):
            nonlocal best
            gap = (j - k0) % L
            if best is None or gap < best[0]:
                best = (gap, j, kind, third)

        for h in self.graph.holes:
            for j in view.face_positions(h):
                offer(j, 'hole', None)
        for v in self.exits('g', g, r):
            for j in view.face_positions(v.face):
                offer(j, 'g', v.cells[2])
        for v in self.exits('r', g, r):
            for j in view.face_positions(v.face):
                offer(j, 'r', v.cells[2])
        if stop is not None and stop[:2] == (g, r):
            for j in view.face_positions(stop[2]):
                offer(j, 'stop', None)
        if best is None:
            raise TraceStuck(f"β*({g},{r}) 上从 {k0} 起找不到出口")
        return best[1], best[2], best[3]

    def trace(self, g: int, r: int, arc: int, stop=None) -> None:
        """
        沿 β*(G,R) 追踪一条路径：从洞出发到洞为止，或绕回 stop=(g, r, 面)

        Raises:
            TraceStuck
        """
        while True:
            self.steps += 1
            if self.steps > self.budget:
                raise TraceStuck(f"追踪超过 {self.budget} 步")
            view = self.view(g, r)
            L = len(view)
            k0 = self.locate(view, arc)
            j, kind, third = self.next_event(g, r, k0, stop)
            count = (j - k0) % L + 1
            self.cross.append(view_segment(view.parts[0].version, g, k0, count))
            if kind in ('hole', 'stop'):
                return
            face = view.junction(j)
            if kind == 'g':
                self.cuts_g.setdefault(self.store.pair(g, third), {})[face] = r
                g = third
            else:
                self.cuts_r.setdefault(self.store.pair(r, third), {})[face] = g
                r = third
            nxt = self.view(g, r)
            at = nxt.face_positions(face)
            if not at:
                raise TraceStuck(f"面 {face} 不在 β*({g},{r}) 上")
            arc = nxt.arc((at[0] + 1) % len(nxt))
            if stop is not None and (g, r, face) == stop:
                return

    # ---- 收尾 ----
    def survivors(self, own: VoronoiDiagram, rivals: HoleOwners,
                  cuts: Dict[Tuple[int, int], Dict[int, int]]) -> List[Segment]:
        """own 的边界段在切点与洞处切开后仍然存活的部分"""
        return keep_pieces(own, self.weights, rivals, lambda pair: cuts.get(pair, {}))

    def alive(self, own: VoronoiDiagram, rivals: HoleOwners) -> List[int]:
        """own 中在合并后仍然拥有自己的站点"""
        found = []
        for s in own.sites:
            rival = rivals.owner_of(s, self.table.site(s).hole)
            if self.key(s, s) < self.key(rival, s):
                found.append(s)
        return found

    # ---- 自由环 ----
    def _colour(self, p: int) -> Tuple[bool, int, int]:
        """(是否属于 G, G 中最近站点, R 中最近站点)"""
        self.counters.site_scans += 1
        gp = self.table.owner(p, self.weights, self.green.sites)
        rp = self.table.owner(p, self.weights, self.red.sites)
        return self.key(gp, p) < self.key(rp, p), gp, rp

    def seed(self, g0: int, r0: int) -> Tuple[int, int, int]:
        """
        r0 的最短路树上从 r0 到 g0 的路径两端颜色不同，二分找到一条变色弧

        Returns:
            (g, r, 弧 g→r)
        """
        tree = self.table.site(r0).tree
        path = tree.path_to(g0)
        verts = [r0] + [self.graph.head[a] for a in path]
        lo, hi = 0, len(verts) - 1
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if self._colour(verts[mid])[0]:
                hi = mid
            else:
                lo = mid
        _, g, _ = self._colour(verts[hi])
        _, _, r = self._colour(verts[lo])
        return g, r, self.graph.rev[path[lo]]

    def diagram(self, sites: List[int], segments: List[Segment]) -> VoronoiDiagram:
        grouped: Dict[Tuple[int, int], List[Segment]] = {}
        for seg in segments:
            grouped.setdefault(seg.pair, []).append(seg)
        every = set(self.green.sites) | set(self.red.sites)
        dead = sorted((every - set(sites)) | set(self.green.dead) | set(self.red.dead))
        return VoronoiDiagram(self.index, sorted(sites), self.weights, grouped, dead)

    def run(self) -> VoronoiDiagram:
        alive_g = self.alive(self.green, self.owners_r)
        alive_r = self.alive(self.red, self.owners_g)
        if not alive_g:
            return self.diagram(list(self.red.sites), list(self.red.all_segments()))
        if not alive_r:
            return self.diagram(list(self.green.sites), list(self.green.all_segments()))

        entering, leaving = self.hole_crossings()
        if len(entering) != leaving:
            raise TraceStuck(f"洞上进入 {len(entering)} 次、离开 {leaving} 次")
        self.budget += 2 * len(entering)
        for g, r, arc in entering:
            self.trace(g, r, arc)
        if not entering:
            # 两组之间只有一个不经过洞的环
            if len(self.green.sites) == 1 and len(self.red.sites) == 1:
                g, r = self.green.sites[0], self.red.sites[0]
                view = self.view(g, r)
                self.cross.append(view_segment(view.parts[0].version, g, 0, len(view)))
            else:
                g, r, arc = self.seed(alive_g[0], alive_r[0])
                self.trace(g, r, arc, stop=(g, r, self.graph.right(arc)))

        segments = list(self.cross)
        segments += self.survivors(self.green, self.owners_r, self.cuts_g)
        segments += self.survivors(self.red, self.owners_g, self.cuts_r)
        logger.debug(f"合并 {len(self.green.sites)}+{len(self.red.sites)} 个站点: "
                     f"{len(entering)} 条洞上入口, {self.steps} 步, {len(segments)} 段")
        return self.diagram(alive_g + alive_r, segments)


def keep_pieces(own: VoronoiDiagram, weights: Mapping[int, int], rivals: HoleOwners,
                events_of: Callable[[Tuple[int, int]], Dict[int, int]],
                pairs: Optional[Sequence[Tuple[int, int]]] = None) -> List[Segment]:
    """
    own 的边界段在切点与洞处切开，保留没有被对手夺走的部分

    切点两侧的段用切点处的对手站点判定；落在洞上的一端用对手在该洞上的归属判定；
    其余段经不被穿过的 Voronoi 顶点连成块，整块同生同死

    Args:
        rivals: 对手图在各个洞上的归属
        events_of: 站点对 -> {切点面: 在该面夺走一端的对手站点}
        pairs: 只处理这些站点对，默认全部
    """
    index = own.index
    g = index.graph
    table = index.table
    counters = index.counters

    def taken(e: int, u: int, v: int, rx: int, ry: int) -> bool:
        x, y = g.tail[e], g.head[e]
        return table.key(rx, x, weights) < table.key(u, x, weights) or \
            table.key(ry, y, weights) < table.key(v, y, weights)

    uf = _Pieces()
    pieces = []
    by_face: Dict[int, List[int]] = {}
    for pair in (sorted(own.segments) if pairs is None else pairs):
        u, v = pair
        events = events_of(pair)
        for seg in own.segments.get(pair, []):
            view = BisectorView([own.part(seg, u)], counters)
            splits = set()
            for f in list(events) + list(g.holes):
                splits.update(view.face_positions(f))
            bounds, i0 = [], 0
            for j in sorted(s for s in splits if s < seg.count - 1):
                bounds.append((i0, j))
                i0 = j + 1
            bounds.append((i0, seg.count - 1))
            for a, b in bounds:
                ends = ((g.right(view.arc(a)), a), (view.junction(b), b))
                status = None
                for face, k in ends:
                    e = view.arc(k)
                    if face in events:
                        status = not taken(e, u, v, events[face], events[face])
                    elif g.is_hole(face):
                        h, ix, iy = corner_indices(index, e)
                        status = not taken(e, u, v, rivals.owner_at(h, ix), rivals.owner_at(h, iy))
                    if status is not None:
                        break
                i = uf.add(status)
                pieces.append((seg, a, b, view, i))
                for face, _ in ends:
                    if face not in events and not g.is_hole(face):
                        by_face.setdefault(face, []).append(i)
    for members in by_face.values():
        for i in members[1:]:
            uf.union(members[0], i)

    kept = []
    for seg, a, b, view, i in pieces:
        root = uf.find(i)
        if uf.status[root] is None:
            # 整块都没碰到切点或洞：逐站点比较一次
            counters.site_scans += 1
            e = view.arc(a)
            rx = table.owner(g.tail[e], weights, rivals.vd.sites)
            ry = table.owner(g.head[e], weights, rivals.vd.sites)
            uf.status[root] = not taken(e, seg.u, seg.v, rx, ry)
        if uf.status[root]:
            L = view.parts[0].version.length
            kept.append(Segment(seg.u, seg.v, seg.version, (seg.start + a) % L, b - a + 1))
    return kept


def brute_merge(green: VoronoiDiagram, red: VoronoiDiagram) -> VoronoiDiagram:
    """逐顶点求归属后逐版本扫描；只在追踪失败时使用"""
    index = green.index
    g = index.graph
    weights = dict(green.weights)
    weights.update(red.weights)
    sites = sorted(set(green.sites) | set(red.sites))
    alive = index.table.alive(weights, sites)
    owner = [index.table.owner(p, weights, alive) for p in range(g.n)]
    pairs = {index.store.pair(owner[g.tail[e]], owner[g.head[e]])
             for e in range(g.m) if owner[g.tail[e]] != owner[g.head[e]]}
    segments: Dict[Tuple[int, int], List[Segment]] = {}
    for u, v in sorted(pairs):
        version = index.store.get(u, v).version_for(weights)
        keep = [owner[g.tail[e]] == u and owner[g.head[e]] == v for e in version.arcs()]
        if not version.family.tour_ascending:
            keep.reverse()
        runs = cyclic_runs(keep)
        if runs:
            segments[(u, v)] = [Segment(u, v, version.index, lo, size) for lo, size in runs]
    dead = sorted((set(sites) - set(alive)) | set(green.dead) | set(red.dead))
    return VoronoiDiagram(index, alive, weights, segments, dead)


def merge_diagrams(green: VoronoiDiagram, red: VoronoiDiagram) -> VoronoiDiagram:
    """
    VD(G ∪ R)

    Returns:
        新的 VoronoiDiagram

    Raises:
        TraceStuck: 仅在 strict 模式下
    """
    if not green.sites:
        return red
    if not red.sites:
        return green
    try:
        return Merger(green, red).run()
    except TraceStuck as exc:
        if green.index.strict:
            raise
        green.index.counters.fallbacks += 1
        logger.warning(f"合并追踪失败，改为逐顶点计算: {exc}")
        return brute_merge(green, red)
