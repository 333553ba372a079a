"""
单元内最远点查询

站点 v 的单元由余树 T*_v 的若干块拼成，候选只有四类：
    边界段上的近侧顶点标号 ℓ(e*) 与段内面悬挂子树 ℓ(f*)，都是版本上的区间最大值
    相邻两段之间的 Voronoi 顶点，逐个检查其内部边
    边界经过的洞，取两次接触之间的角与悬挂子树（洞上的区间最大值）
    洞骨架 T*_H 落在单元内部的部分：按进出骨架的边做子树排除查询
时间与单元的 Voronoi 顶点数成正比（乘对数因子）
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from ..core.cotree import NO_LABEL, Cotree
from ..core.graph import pack
from ..trichromatic.views import BisectorView, Part
from ..voronoi.diagram import VoronoiDiagram
from ..voronoi.preprocess import PieceIndex

logger = logging.getLogger(__name__)


@dataclass
class MaxIndex:
    site: int
    cotree: Cotree
    phi_site: int = 0

    def subtree_max(self, f: int) -> Tuple:
        """余树中面 f 子树内的最大 (标号, 顶点)"""
        return self.cotree.subtree_max[f]


@dataclass(frozen=True)
class FarthestResult:
    site: int
    vertex: int
    label: object              # d(s,p) 加上 p 的势
    distance: object           # 真实距离 d(s,p)


@dataclass(frozen=True)
class SkeletonIncidence:
    """边界面与单元内部面之间的一条骨架边"""
    face: int                  # 边界上的面
    inner: int                 # 单元内部的面
    arc: int                   # left(arc) = face
    penetrating: bool          # 余树中 face 是父亲


def preprocess_max(index: PieceIndex, sites: Optional[Sequence[int]] = None) -> Dict[int, MaxIndex]:
    """
    为每个站点登记余树上的子树最大值、洞骨架与洞边区间最大值

    Returns:
        {site: MaxIndex}，同时写入 index.max_index
    """
    phi = index.phi
    for s in (sites if sites is not None else index.sites):
        if s not in index.max_index:
            data = index.table.site(s)
            index.max_index[s] = MaxIndex(s, data.cotree, pack(phi[s]) if phi is not None else 0)
    return index.max_index


def _inner_arc(g, f: int, x: int, y: int) -> Optional[int]:
    """面 f 上端点为 {x, y} 且 left = f 的弧"""
    for a in g.face_arcs[f]:
        if {g.tail[a], g.head[a]} == {x, y}:
            return a
    return None


@dataclass
class _CellScan:
    """一次查询中收集到的候选"""
    vd: VoronoiDiagram
    site: int
    cotree: Cotree
    best: Tuple = NO_LABEL
    cycles: List[List[SkeletonIncidence]] = field(default_factory=list)

    def __post_init__(self):
        self.graph = self.vd.graph
        self.index = self.vd.index
        self.counters = self.index.counters
        self.views = self.vd.views(self.site)

    def offer(self, value) -> None:
        if value is not None and value > self.best:
            self.best = value

    def on_boundary(self, f: int) -> bool:
        return any(view.face_positions(f) for view in self.views)

    def incidence(self, f: int, a: int, found: List[SkeletonIncidence]) -> None:
        o = self.graph.right(a)
        if self.on_boundary(o):
            return
        found.append(SkeletonIncidence(f, o, a, self.cotree.child_across(a) == o))

    def segment(self, part: Part, found: List[SkeletonIncidence]) -> None:
        g = self.graph
        view = BisectorView([part], self.counters)
        n = part.count
        self.offer(view.max_over(0, n - 1, lambda p: p.side()['le']))
        # 最后一个面属于下一个 Voronoi 顶点，装饰不可信
        lo, hi = (1, n - 1) if part.flipped else (0, n - 2)
        if lo > hi:
            return
        self.offer(view.max_over(lo, hi, lambda p: p.side()['lf']))
        for k in view.collect(lo, hi, lambda p: p.side()['b']):
            e = view.arc(k)
            f = g.right(e) if part.flipped else g.left[e]
            third = [z for z in g.face_vertices(f) if z not in (g.tail[e], g.head[e])]
            a = _inner_arc(g, f, g.tail[e], third[0]) if third else None
            if a is not None:
                self.incidence(f, a, found)

    def junction(self, h, nxt, found: List[SkeletonIncidence]) -> None:
        g = self.graph
        cot = self.cotree
        f = h.face
        x, x2 = g.tail[h.last], g.tail[nxt.first]
        if g.is_hole(f):
            m = len(g.face_arcs[f])
            walk = self.index.walk_index(f)
            i1, i2 = walk[h.last], walk[g.rev[nxt.first]]
            span = (i1 - i2) % m
            if not span:
                return
            self.offer(cot.hole_corner_max(f, i2 + 1, i1))
            if span > 1:
                self.offer(cot.hole_fan_max(f, i2 + 1, i1 - 1))
                for i in cot.hole_skeleton_in(f, i2 + 1, span - 1):
                    self.incidence(f, g.face_arcs[f][i], found)
            return
        if x == x2:
            return
        a = _inner_arc(g, f, x, x2)
        if a is None:
            return
        self.offer(cot.hanging_label(a))
        if cot.in_skeleton_edge(a):
            self.incidence(f, a, found)

    def run(self) -> Tuple:
        dcel = self.vd.dcel()
        for cycle in dcel.cycles.get(self.site, []):
            found: List[SkeletonIncidence] = []
            for i in cycle:
                h = dcel.halfedges[i]
                self.segment(h.part, found)
                if h.next >= 0:
                    self.junction(h, dcel.halfedges[h.next], found)
            self.cycles.append(found)
        self.skeleton()
        return self.best

    def skeleton(self) -> None:
        cot = self.cotree
        incidences = [inc for found in self.cycles for inc in found]
        tops = [inc.inner for inc in incidences if inc.penetrating]
        exits = [inc.face for inc in incidences if not inc.penetrating]
        if not self.on_boundary(cot.root):
            tops.append(cot.root)
        for t in sorted(set(tops)):
            below = [x for x in exits if cot.is_skeleton_descendant(t, x)]
            self.offer(cot.subtree_exclusion_max(t, below))


def farthest_in_cell(vd: VoronoiDiagram, v: int) -> Optional[FarthestResult]:
    """
    Returns:
        单元内距离 v 最远的顶点；单元为空时返回 None
    """
    if v not in vd.sites:
        return None
    index = vd.index
    mi = index.max_index.get(v)
    if mi is None:
        mi = preprocess_max(index, [v])[v]
    index.counters.max_queries += 1
    best = _CellScan(vd, v, mi.cotree).run()
    if best[1] < 0:
        best = mi.cotree.vertex_label[v]
    label, vertex = best
    return FarthestResult(v, vertex, label, label - mi.phi_site)


def farthest_all(vd: VoronoiDiagram) -> Tuple[Dict[int, FarthestResult], Optional[Tuple]]:
    """
    所有非空单元的最远点

    Returns:
        ({site: FarthestResult}, (ω(s) + label, site, vertex) 中的最大者)
    """
    results: Dict[int, FarthestResult] = {}
    best = None
    for s in vd.sites:
        res = farthest_in_cell(vd, s)
        if res is None:
            continue
        results[s] = res
        cand = (vd.weights[s] + res.label, s, res.vertex)
        if best is None or cand > best:
            best = cand
    return results, best


def skeleton_incidences(vd: VoronoiDiagram, v: int) -> List[List[SkeletonIncidence]]:
    """每个边界环上进出洞骨架的边"""
    if v not in vd.sites:
        return []
    scan = _CellScan(vd, v, vd.index.table.site(v).cotree)
    scan.run()
    return scan.cycles


def penetration_audit(vd: VoronoiDiagram, v: int) -> List[dict]:
    """
    逐个边界环统计：进入单元的树弧（应为 0）、离开单元的树弧、对偶在余树中的弧，
    以及骨架从边界进入单元内部（penetrating）和从内部离开（exiting）的次数
    """
    if v not in vd.sites:
        return []
    index = vd.index
    g = index.graph
    data = index.table.site(v)
    tree, cot = data.tree, data.cotree
    dcel = vd.dcel()
    report = []
    for cycle, found in zip(dcel.cycles.get(v, []), skeleton_incidences(vd, v)):
        arcs = [a for h in cycle for a in (dcel.halfedges[h].part.arc(k)
                                           for k in range(dcel.halfedges[h].part.count))]
        entering = sum(1 for a in arcs if tree.parent_arc[g.tail[a]] == g.rev[a])
        leaving = sum(1 for a in arcs if tree.is_tree_arc(a))
        dual = sum(1 for a in arcs if cot.in_tree(a))
        report.append({
            'length': len(arcs),
            'entering_tree_arcs': entering,
            'leaving_tree_arcs': leaving,
            'cotree_arcs': dual,
            'penetrating': sum(1 for inc in found if inc.penetrating),
            'exiting': sum(1 for inc in found if not inc.penetrating),
            'ok': entering == 0 and leaving + dual == len(arcs),
        })
    return report
