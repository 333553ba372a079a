"""
VD*(S′, ω) 的构造：单洞分治、两洞合并、三洞切割拼接，以及四个以上洞的计数拼装
"""
import logging
from itertools import combinations
from math import comb
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

from ..errors import AssertionBreach, CountMismatch
from ..trichromatic.search import TriQuery, tri_vertices_ext
from ..trichromatic.views import BisectorView
from .diagram import Segment, VoronoiDiagram, intersect_cyclic
from .holes import HoleOwners
from .merge import keep_pieces, merge_diagrams
from .preprocess import PieceIndex

logger = logging.getLogger(__name__)


def _single(index: PieceIndex, site: int, weights: Mapping[int, int]) -> VoronoiDiagram:
    return VoronoiDiagram(index, [site], {site: weights[site]})


def vd_single_hole(index: PieceIndex, sites: Sequence[int], weights: Mapping[int, int]) -> VoronoiDiagram:
    """
    同一个洞上的站点：按洞边界顺序对半分治，两半合并

    Args:
        sites: 已按洞边界游走顺序排列
    """
    sites = list(sites)
    if len(sites) == 1:
        return _single(index, sites[0], weights)
    mid = len(sites) // 2
    left = vd_single_hole(index, sites[:mid], weights)
    right = vd_single_hole(index, sites[mid:], weights)
    return merge_diagrams(left, right)


def vd_two_holes(index: PieceIndex, vd_g: VoronoiDiagram, vd_r: VoronoiDiagram) -> VoronoiDiagram:
    """两个洞上的站点组合并"""
    return merge_diagrams(vd_g, vd_r)


def _on_segments(vd: VoronoiDiagram, pair: Tuple[int, int], face: int) -> bool:
    """面 face 是否是 vd 中 pair 某条边界段上的顶点（含两端）"""
    g = vd.graph
    for seg in vd.segments.get(pair, []):
        view = BisectorView([vd.part(seg, seg.u)], vd.index.counters)
        if view.face_positions(face) or g.right(view.arc(0)) == face:
            return True
    return False


def trichromatic_vertices(index: PieceIndex, vd12: VoronoiDiagram, vd13: VoronoiDiagram,
                          groups: Sequence[set], weights: Mapping[int, int]) -> Dict[int, Tuple[int, int, int]]:
    """
    三组图的三色顶点

    对 VD(S1∪S2) 的每条跨组边 β*(u,v)：W = u 在 VD(S1∪S3) 中属于 S3 的邻居，
    在 VD({u}∪W) 中找 β*(u,v) 离开 u 的单元的顶点，
    只保留同时落在 VD(S1∪S2) 的 (u,v) 边和 VD(S1∪S3) 的 (u,w) 边上的那些

    Returns:
        {面: (S1 站点, S2 站点, S3 站点)}
    """
    s1, s2, s3 = groups
    store = index.store
    found: Dict[int, Tuple[int, int, int]] = {}
    for a, b in sorted(vd12.segments):
        if a in s1 and b in s2:
            u, v = a, b
        elif a in s2 and b in s1:
            u, v = b, a
        else:
            continue
        near = [w for w in vd13.neighbours(u) if w in s3]
        if not near:
            continue
        ordered = [w for grp in index.hole_groups(near).values() for w in grp]
        cell = vd_two_holes(index, _single(index, u, weights), vd_single_hole(index, ordered, weights))
        if u not in cell.sites:
            continue
        others = tuple(cell.neighbours(u))
        if not others:
            continue
        q = TriQuery(store, v, u, others, weights, cell.views(u),
                     counters=index.counters, strict=index.strict)
        for vertex in tri_vertices_ext(q).vertices:
            w = vertex.cells[2]
            if vertex.hole or w not in s3:
                continue
            if not _on_segments(vd12, (a, b), vertex.face):
                continue
            if not _on_segments(vd13, store.pair(u, w), vertex.face):
                continue
            found[vertex.face] = (u, v, w)
    return found


def _mono(first: VoronoiDiagram, second: VoronoiDiagram, pair: Tuple[int, int]) -> List[Segment]:
    """同组站点对：两张两组图中该对边界的交"""
    segs_a = first.segments.get(pair, [])
    segs_b = second.segments.get(pair, [])
    if not segs_a or not segs_b:
        return []
    version = segs_a[0].version
    if any(s.version != version for s in segs_a + segs_b):
        raise CountMismatch(f"β*{pair} 在两张两组图中的版本不一致")
    u, v = pair
    L = first.store.get(u, v).version(version).length
    runs = intersect_cyclic([(s.start, s.count) for s in segs_a], [(s.start, s.count) for s in segs_b], L)
    return [Segment(u, v, version, start, count) for start, count in runs]


def vd_three_holes(index: PieceIndex, vd1: VoronoiDiagram, vd2: VoronoiDiagram, vd3: VoronoiDiagram,
                   vd12: Optional[VoronoiDiagram] = None, vd13: Optional[VoronoiDiagram] = None,
                   vd23: Optional[VoronoiDiagram] = None) -> VoronoiDiagram:
    """
    三个洞：在三色顶点处切开三张两组图的跨组边，同组边取两张图的交

    Args:
        vd1, vd2, vd3: 三个洞各自的图
        vd12, vd13, vd23: 已经建好的两组图，缺省时现场合并
    """
    vd12 = vd12 if vd12 is not None else vd_two_holes(index, vd1, vd2)
    vd13 = vd13 if vd13 is not None else vd_two_holes(index, vd1, vd3)
    vd23 = vd23 if vd23 is not None else vd_two_holes(index, vd2, vd3)
    weights = dict(vd1.weights)
    weights.update(vd2.weights)
    weights.update(vd3.weights)
    groups = [set(vd1.sites), set(vd2.sites), set(vd3.sites)]
    if not all(groups):
        present = [vd for vd, grp in zip((vd1, vd2, vd3), groups) if grp]
        if not present:
            return VoronoiDiagram(index, [], weights)
        return present[0] if len(present) == 1 else vd_two_holes(index, *present)

    corners = trichromatic_vertices(index, vd12, vd13, groups, weights)
    store = index.store
    events: Dict[Tuple[int, Tuple[int, int]], Dict[int, int]] = {}
    for face, sites in corners.items():
        for k in range(3):
            x, y, z = sites[k], sites[(k + 1) % 3], sites[(k + 2) % 3]
            # 跨组边 (x,y) 在该顶点处被第三组的 z 截断
            events.setdefault((k, store.pair(x, y)), {})[face] = z

    segments: List[Segment] = []
    # (两组图, 对手组的图, 跨组边的编号)
    plans = ((vd12, vd3, 0), (vd23, vd1, 1), (vd13, vd2, 2))
    for own, rival, k in plans:
        cross = [pair for pair in sorted(own.segments)
                 if _group(groups, pair[0]) != _group(groups, pair[1])]
        segments += keep_pieces(own, weights, HoleOwners(rival),
                                lambda pair, k=k: events.get((k, pair), {}), cross)
    for i, (first, second) in enumerate(((vd12, vd13), (vd12, vd23), (vd13, vd23))):
        for pair in sorted(first.segments):
            if _group(groups, pair[0]) == i and _group(groups, pair[1]) == i:
                segments += _mono(first, second, pair)

    alive = sorted((set(vd12.sites) & set(vd13.sites) & groups[0]) |
                   (set(vd12.sites) & set(vd23.sites) & groups[1]) |
                   (set(vd13.sites) & set(vd23.sites) & groups[2]))
    live = set(alive)
    grouped: Dict[Tuple[int, int], List[Segment]] = {}
    for seg in segments:
        if seg.u in live and seg.v in live:
            grouped.setdefault(seg.pair, []).append(seg)
    dead = sorted((set().union(*groups) - live) | set(vd1.dead) | set(vd2.dead) | set(vd3.dead))
    logger.debug(f"三洞合并: {len(corners)} 个三色顶点, {sum(map(len, grouped.values()))} 段")
    return VoronoiDiagram(index, alive, weights, grouped, dead)


def _group(groups: Sequence[set], s: int) -> int:
    for i, grp in enumerate(groups):
        if s in grp:
            return i
    return -1


def expected_cover(t: int, same_group: bool) -> int:
    """一对站点所在组同时出现的三组组合数"""
    return comb(t - 1, 2) if same_group else t - 2


def _cover_runs(segs: Sequence[Segment], L: int, need: int) -> List[Tuple[int, int]]:
    """
    按段端点做 ±1 扫描，返回覆盖次数恰为 need 的极大区间 (起点, 长度)

    Raises:
        CountMismatch: 覆盖次数超过 need
    """
    base = 0
    delta: Dict[int, int] = {}
    for s in segs:
        if s.count >= L:
            base += 1
            continue
        end = s.start + s.count
        delta[s.start] = delta.get(s.start, 0) + 1
        if end > L:
            # 回绕的段在位置 0 已经计入
            base += 1
            delta[end - L] = delta.get(end - L, 0) - 1
        elif end < L:
            delta[end] = delta.get(end, 0) - 1
    marks = sorted(set(delta) | {0})
    cover, runs = base, []
    for i, pos in enumerate(marks):
        cover += delta.get(pos, 0)
        nxt = marks[i + 1] if i + 1 < len(marks) else L
        if cover > need:
            raise CountMismatch(f"第 {pos} 条弧被覆盖 {cover} 次，多于 {need}")
        if cover == need and nxt > pos:
            runs.append((pos, nxt - pos))
    if not runs:
        return []
    return intersect_cyclic(runs, [(0, L)], L)


def assemble_multi(index: PieceIndex, groups: Sequence[Sequence[int]], weights: Mapping[int, int],
                   triples: Dict[Tuple[int, int, int], VoronoiDiagram]) -> VoronoiDiagram:
    """
    四个以上的组：每对站点的边界 = 所有包含这两组的三组图中该对边界的交，
    沿平分线按段端点扫描覆盖次数，恰好被全部相关三组图覆盖的位置保留

    Raises:
        CountMismatch: 覆盖次数超过相关三组图个数，或同一对站点的版本不一致
    """
    t = len(groups)
    group_of = {s: i for i, grp in enumerate(groups) for s in grp}
    all_sites = [s for grp in groups for s in grp]
    alive = index.table.alive(weights, all_sites)
    live = set(alive)

    collected: Dict[Tuple[int, int], List[Segment]] = {}
    for key in sorted(triples):
        for pair, segs in triples[key].segments.items():
            if pair[0] in live and pair[1] in live:
                collected.setdefault(pair, []).extend(segs)

    segments: Dict[Tuple[int, int], List[Segment]] = {}
    for pair, segs in sorted(collected.items()):
        u, v = pair
        need = expected_cover(t, group_of[u] == group_of[v])
        version = segs[0].version
        if any(s.version != version for s in segs):
            raise CountMismatch(f"β*({u},{v}) 在不同三组图中的版本不一致")
        L = index.store.get(u, v).version(version).length
        try:
            runs = _cover_runs(segs, L, need)
        except CountMismatch as exc:
            raise CountMismatch(f"β*({u},{v}): {exc}") from exc
        if runs:
            segments[pair] = [Segment(u, v, version, lo, size) for lo, size in runs]

    dead = sorted(set(all_sites) - live)
    logger.debug(f"{t} 组拼装: {sum(map(len, segments.values()))} 段")
    return VoronoiDiagram(index, alive, weights, segments, dead)


def construct_vd(index: PieceIndex, sites: Sequence[int], weights: Mapping[int, int]) -> VoronoiDiagram:
    """
    Args:
        index: 预处理过的 piece
        sites: 站点子集
        weights: 站点权重

    Returns:
        VoronoiDiagram（区域为空的站点记在 dead 中）

    Raises:
        WeightsMissing, SiteNotPreprocessed
        AssertionBreach: Voronoi 顶点数超过 c_v·|S′|
    """
    sites = sorted(set(sites))
    index.check(sites, weights)
    index.counters.vd_constructions += 1
    alive = index.table.alive(weights, sites)
    dead = sorted(set(sites) - set(alive))
    groups = [grp for _, grp in sorted(index.hole_groups(alive).items(), key=lambda kv: min(kv[1]))]
    singles = [vd_single_hole(index, grp, weights) for grp in groups]

    pairs: Dict[Tuple[int, int], VoronoiDiagram] = {}

    def pair(i: int, j: int) -> VoronoiDiagram:
        if (i, j) not in pairs:
            pairs[(i, j)] = vd_two_holes(index, singles[i], singles[j])
        return pairs[(i, j)]

    if not singles:
        result = VoronoiDiagram(index, [], weights)
    elif len(singles) == 1:
        result = singles[0]
    elif len(singles) == 2:
        result = pair(0, 1)
    elif len(singles) == 3:
        result = vd_three_holes(index, *singles, pair(0, 1), pair(0, 2), pair(1, 2))
    else:
        triples = {(i, j, k): vd_three_holes(index, singles[i], singles[j], singles[k],
                                             pair(i, j), pair(i, k), pair(j, k))
                   for i, j, k in combinations(range(len(singles)), 3)}
        result = assemble_multi(index, groups, weights, triples)
    result.dead = sorted(set(result.dead) | set(dead))

    limit = index.c_v * max(1, len(sites))
    count = len(result.vertices())
    if count > limit:
        raise AssertionBreach(f"Voronoi 顶点 {count} 个，超过 c_v·|S′| = {limit}")
    return result


def cell_boundary(vd: VoronoiDiagram, u: int) -> Optional[Iterator[int]]:
    """
    逐条给出 u 的单元边界弧（从 u 指向外侧），每条弧按需从平分线版本取出

    Returns:
        迭代器；单元为空时返回 None
    """
    if u not in vd.sites:
        return None
    dcel = vd.dcel()

    def walk():
        for cycle in dcel.cycles.get(u, []):
            for h in cycle:
                part = dcel.halfedges[h].part
                for k in range(part.count):
                    yield part.arc(k)
    return walk()
