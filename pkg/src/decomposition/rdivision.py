"""
r-division：递归分隔器切分 + 洞数后处理
每条边恰属于一个 piece；属于多个 piece 的顶点是边界点
"""
import logging
import math
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Set

from ..core.graph import EmbeddedGraph
from ..errors import TargetTooSmall, AssertionBreach
from ..settings import H_MAX, C_B, C_P
from .separator import adjacency_of, components, separator

logger = logging.getLogger(__name__)

MIN_R = 16


@dataclass
class Piece:
    """r-division 中的一块，顶点使用局部编号"""
    index: int
    graph: EmbeddedGraph
    global_ids: List[int]
    arc_map: List[int]                       # 局部弧 -> 父图弧
    boundary: List[int] = field(default_factory=list)
    parent: Optional[EmbeddedGraph] = None

    def __post_init__(self):
        self.local_ids: Dict[int, int] = {v: i for i, v in enumerate(self.global_ids)}

    @property
    def holes(self) -> List[int]:
        return self.graph.holes

    @property
    def n(self) -> int:
        return self.graph.n

    def hole_of(self, v: int) -> Optional[int]:
        """包含局部顶点 v 的第一个洞"""
        for h in self.graph.holes:
            if v in self._hole_vertices(h):
                return h
        return None

    def _hole_vertices(self, h: int) -> Set[int]:
        cache = self.__dict__.setdefault('_hole_cache', {})
        if h not in cache:
            cache[h] = set(self.graph.face_vertices(h))
        return cache[h]

    def boundary_global(self) -> List[int]:
        return [self.global_ids[v] for v in self.boundary]


@dataclass
class RDivision:
    pieces: List[Piece]
    containing: Dict[int, List[int]]
    boundary: List[int]
    r: int

    def piece_of(self, v: int) -> List[int]:
        return self.containing.get(v, [])

    def audit(self, c_b: int = C_B, c_p: int = C_P, h_max: int = H_MAX) -> dict:
        n = len(self.containing)
        report = {
            'pieces': len(self.pieces),
            'piece_limit': c_p * max(1, math.ceil(n / self.r)),
            'max_vertices': max(p.n for p in self.pieces),
            'max_boundary': max(len(p.boundary) for p in self.pieces),
            'max_holes': max(len(p.holes) for p in self.pieces),
            'boundary_ok': all(len(p.boundary) <= c_b * math.sqrt(p.n) for p in self.pieces),
            'holes_ok': all(len(p.holes) <= h_max for p in self.pieces),
        }
        report['pieces_ok'] = report['pieces'] <= report['piece_limit']
        return report


def build_piece(g: EmbeddedGraph, edges: Sequence[int], index: int) -> Piece:
    """由代表弧集合构造 piece；与父图面不完全重合的面都是洞"""
    arcs = sorted({e for a in edges for e in (a, g.rev[a])})
    local_arc = {a: i for i, a in enumerate(arcs)}
    verts = sorted({g.tail[a] for a in arcs})
    local_v = {v: i for i, v in enumerate(verts)}
    tails = [local_v[g.tail[a]] for a in arcs]
    heads = [local_v[g.head[a]] for a in arcs]
    revs = [local_arc[g.rev[a]] for a in arcs]
    rotation = [[local_arc[a] for a in g.rotation[v] if a in local_arc] for v in verts]
    coords = [g.coords[v] for v in verts] if g.coords is not None else None
    base = [g.base[a] for a in arcs]
    tb = [g.tiebreak[a] for a in arcs]

    loose = EmbeddedGraph(len(verts), tails, heads, revs, base, rotation, (), coords, tb,
                          h_max=10 ** 9, check=False)
    hole_arcs = []
    for f, walk in enumerate(loose.face_arcs):
        parent_face = g.left[arcs[walk[0]]]
        same = len(g.face_arcs[parent_face]) == len(walk) and all(
            a in local_arc for a in g.face_arcs[parent_face])
        if g.is_hole(parent_face) or not same:
            hole_arcs.append(walk[0])
    graph = EmbeddedGraph(len(verts), tails, heads, revs, base, rotation, hole_arcs, coords, tb,
                          h_max=max(len(hole_arcs), 1), check=False)
    return Piece(index, graph, verts, arcs, parent=g)


def r_division(g: EmbeddedGraph, r: int, h_max: int = H_MAX, c_b: int = C_B, c_p: int = C_P,
               strict: bool = False) -> RDivision:
    """
    Args:
        g: 三角化（洞除外）的连通图
        r: 目标 piece 大小
        h_max: 每块洞数上限
        c_b: 边界点常数
        c_p: piece 数常数，块数不超过 c_p·⌈n/r⌉
        strict: 常数无法满足时是否抛出 AssertionBreach

    Returns:
        RDivision
    """
    if r < MIN_R:
        raise TargetTooSmall(f"r={r} < {MIN_R}")
    all_edges = g.edges()
    if r >= g.n:
        piece = build_piece(g, all_edges, 0)
        return RDivision([piece], {v: [0] for v in range(g.n)}, [], r)

    count = [0] * g.n          # 每个顶点所在区域数
    for v in range(g.n):
        count[v] = 1
    queue = deque([tuple(all_edges)])
    final: List[tuple] = []

    def region_vertices(edges):
        return {x for e in edges for x in (g.tail[e], g.head[e])}

    while queue:
        region = queue.popleft()
        verts = region_vertices(region)
        boundary = [v for v in verts if count[v] > 1]
        too_big = len(verts) > r
        too_many = len(boundary) > c_b * math.sqrt(len(verts))
        if not too_big and not too_many:
            final.append(region)
            continue
        weights = None if too_big else {v: (1 if count[v] > 1 else 0) for v in verts}
        groups = _split(g, region, weights)
        if len(groups) < 2:
            _give_up(f"区域 ({len(verts)} 点) 无法继续切分", strict)
            final.append(region)
            continue
        _recount(g, region, groups, count)
        queue.extend(groups)

    # 洞数后处理
    pieces_edges: List[tuple] = []
    pending = deque(final)
    while pending:
        region = pending.popleft()
        piece = build_piece(g, region, 0)
        if len(piece.holes) <= h_max:
            pieces_edges.append(region)
            continue
        groups = _split(g, region, None)
        if len(groups) < 2:
            _give_up(f"piece 有 {len(piece.holes)} 个洞且无法再切分", strict)
            pieces_edges.append(region)
            continue
        _recount(g, region, groups, count)
        pending.extend(groups)

    limit = c_p * max(1, math.ceil(g.n / r))
    if len(pieces_edges) > limit:
        _give_up(f"切出 {len(pieces_edges)} 块，超过 c_p·⌈n/r⌉ = {limit}", strict)
    pieces_edges.sort(key=lambda edges: min(edges))
    pieces = [build_piece(g, edges, i) for i, edges in enumerate(pieces_edges)]
    containing: Dict[int, List[int]] = {}
    for p in pieces:
        for v in p.global_ids:
            containing.setdefault(v, []).append(p.index)
    boundary = sorted(v for v, ps in containing.items() if len(ps) > 1)
    bset = set(boundary)
    for p in pieces:
        p.boundary = [i for i, v in enumerate(p.global_ids) if v in bset]
    logger.info(f"r-division: {len(pieces)} 块, {len(boundary)} 个边界点 (r={r})")
    return RDivision(pieces, containing, boundary, r)


def _give_up(message: str, strict: bool) -> None:
    if strict:
        raise AssertionBreach(message)
    logger.warning(message)


def _recount(g: EmbeddedGraph, region, groups, count) -> None:
    before = {x for e in region for x in (g.tail[e], g.head[e])}
    for v in before:
        count[v] -= 1
    for grp in groups:
        for v in {x for e in grp for x in (g.tail[e], g.head[e])}:
            count[v] += 1


def _split(g: EmbeddedGraph, region: Sequence[int], weights) -> List[tuple]:
    """用分隔器把区域的边分成若干组，每组连通"""
    adj = adjacency_of(g, region)
    sep = set(separator(g, weights, adj))
    comps = components(adj, sep)
    comp_of = {v: i for i, c in enumerate(comps) for v in c}
    groups: Dict[int, List[int]] = {}
    orphan: List[int] = []
    for e in sorted(region):
        u, v = g.tail[e], g.head[e]
        if u in comp_of:
            groups.setdefault(comp_of[u], []).append(e)
        elif v in comp_of:
            groups.setdefault(comp_of[v], []).append(e)
        else:
            touching = [comp_of[x] for x in adj[u] + adj[v] if x in comp_of]
            if touching:
                groups.setdefault(min(touching), []).append(e)
            else:
                orphan.append(e)
    result = [tuple(groups[k]) for k in sorted(groups)]
    if orphan:
        # 分隔点之间剩余的边按连通分支成组
        oadj = adjacency_of(g, orphan)
        for comp in components(oadj, set()):
            cs = set(comp)
            result.append(tuple(e for e in orphan if g.tail[e] in cs))
    return [grp for grp in result if grp]
