"""
对照检查：随机实例上把各层结构与暴力参照逐项比较
main.py verify 与测试共用
"""
import logging
import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, Iterator, List, Optional

from ..bisectors.family import version_at
from ..core.graph import EmbeddedGraph, base_of, pack
from ..decomposition.rdivision import MIN_R, r_division
from ..diameter.pipeline import diameter, prepare
from ..errors import BadParams
from ..max_query.farthest import farthest_all, penetration_audit
from ..parser.generators import cylinder, grid, random_triangulation
from ..settings import Settings
from ..trichromatic.search import TriQuery, tri_vertices
from ..voronoi.construct import construct_vd
from ..voronoi.preprocess import PieceIndex, preprocess_piece
from .brute import apsp_oracle, bisector_oracle, farthest_oracle, tri_oracle, vd_oracle

logger = logging.getLogger(__name__)

KINDS = ('grid', 'random', 'cylinder')


@dataclass
class Instance:
    label: str
    index: PieceIndex
    sites: List[int]
    weights: Dict[int, int]

    @property
    def graph(self) -> EmbeddedGraph:
        return self.index.graph


@dataclass
class AuditReport:
    checked: int = 0
    failures: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def add(self, problems: List[str], label: str) -> None:
        self.checked += 1
        self.failures += [f"{label}: {p}" for p in problems]


def generate(kind: str, n: int, seed: int, max_len: int = 10, directed: bool = True) -> EmbeddedGraph:
    """按名称生成大约 n 个顶点的图"""
    if kind == 'grid':
        side = max(2, round(n ** 0.5))
        return grid(side, side, max_len=max_len, seed=seed, directed=directed)
    elif kind == 'random':
        return random_triangulation(max(3, n), seed=seed, max_len=max_len, directed=directed)
    elif kind == 'cylinder':
        per_ring = max(3, round(n ** 0.5))
        return cylinder(max(2, n // per_ring), per_ring, max_len=max_len, seed=seed, directed=directed)
    else:
        raise BadParams(f"未知的生成器: {kind}")


def random_instances(kind: str, count: int, n: int, seed: int = 0, max_sites: int = 12,
                     r: Optional[int] = None, max_len: int = 10) -> Iterator[Instance]:
    """
    随机 (piece, S′, ω) 实例

    Args:
        r: 给定时先做 r-division，再随机取一个 piece（可得到多洞实例）；否则整个图作为 piece
    """
    for i in range(count):
        rng = random.Random(seed * 1_000_003 + i)
        g = generate(kind, n, seed + i, max_len=max_len)
        pg, _ = prepare(g, seed + i)
        if r is not None and r < pg.n:
            pieces = [p for p in r_division(pg, max(MIN_R, r)).pieces if len(p.boundary) >= 2]
            if not pieces:
                continue
            piece = rng.choice(pieces)
            candidates = list(piece.boundary)
        else:
            piece = pg
            candidates = sorted({v for h in pg.holes for v in pg.face_vertices(h)})
        if len(candidates) < 2:
            continue
        sites = sorted(rng.sample(candidates, min(max_sites, len(candidates))))
        weights = {s: pack(rng.randint(0, 3 * max_len)) for s in sites}
        index = preprocess_piece(piece, sites)
        yield Instance(f"{kind}#{seed + i}", index, sites, weights)


def check_vd(inst: Instance) -> List[str]:
    vd = construct_vd(inst.index, inst.sites, inst.weights)
    owner = vd.assignment()
    expected = vd_oracle(inst.graph, inst.sites, inst.weights)
    problems = [f"顶点 {p}: 得到 {owner[p]}，应为 {expected[p]}" for p in range(inst.graph.n)
                if owner[p] != expected[p]]
    limit = inst.index.c_v * len(inst.sites)
    if len(vd.vertices()) > limit:
        problems.append(f"Voronoi 顶点 {len(vd.vertices())} 个，超过 c_v·|S′| = {limit}")
    return problems


def check_bisectors(inst: Instance, max_pairs: int = 6) -> List[str]:
    """每个版本与两站点暴力图在临界值附近的 δ 上一致"""
    problems = []
    store = inst.index.store
    for a, b in list(combinations(inst.sites, 2))[:max_pairs]:
        fam = store.get(a, b)
        if fam.version_count > inst.graph.n + 1:
            problems.append(f"β*({fam.u},{fam.v}) 有 {fam.version_count} 个版本")
        deltas = sorted({c + d for c in fam.criticals for d in (-1, 0, 1)})
        for delta in deltas:
            got = set(version_at(fam, delta).arcs())
            want = bisector_oracle(inst.graph, fam.u, fam.v, delta)
            if got != want:
                problems.append(f"β*({fam.u},{fam.v}) δ={delta}: 差异 {sorted(got ^ want)[:6]}")
    return problems


def check_tri(inst: Instance, max_triples: int = 10) -> List[str]:
    """三站点查询与暴力三色面比较（只比较非洞面）"""
    problems = []
    g = inst.graph
    for r, a, b in list(combinations(inst.sites, 3))[:max_triples]:
        q = TriQuery(inst.index.store, r, a, (b,), inst.weights, counters=inst.index.counters)
        result = tri_vertices(q)
        if len(result) > 2:
            problems.append(f"tri({r},{a},{b}) 返回 {len(result)} 个顶点")
        want = {f for f in tri_oracle(g, [r, a, b], inst.weights) if not g.is_hole(f)}
        if result.dominated:
            if want:
                problems.append(f"tri({r},{a},{b}) 有空单元，但暴力结果为 {sorted(want)}")
            continue
        got = {f for f in result.faces if not g.is_hole(f)}
        if got != want:
            problems.append(f"tri({r},{a},{b}): 得到 {sorted(got)}，应为 {sorted(want)}")
    return problems


def check_farthest(inst: Instance) -> List[str]:
    vd = construct_vd(inst.index, inst.sites, inst.weights)
    results, _ = farthest_all(vd)
    expected = farthest_oracle(inst.graph, inst.sites, inst.weights)
    problems = []
    if set(results) != set(expected):
        problems.append(f"非空单元不一致: {sorted(results)} vs {sorted(expected)}")
    for s, (dist, p) in expected.items():
        res = results.get(s)
        if res is not None and (res.distance, res.vertex) != (dist, p):
            problems.append(f"站点 {s}: 得到 {res.vertex}，应为 {p}")
    for s in vd.sites:
        report = penetration_audit(vd, s)
        for entry in report:
            if not entry['ok']:
                problems.append(f"站点 {s} 的边界环不满足进入/离开条件: {entry}")
        crossings = sum(e['penetrating'] + e['exiting'] for e in report)
        if crossings > 4 * max(1, len(inst.graph.holes)):
            problems.append(f"站点 {s} 的边界与洞骨架相交 {crossings} 次")
    return problems


def check_diameter(g: EmbeddedGraph, settings: Optional[Settings] = None,
                   r: Optional[int] = None) -> List[str]:
    result = diameter(g, r=r, settings=settings)
    dist = apsp_oracle(g)
    want = base_of(max(max(row) for row in dist))
    if result.value != want:
        return [f"直径 {result.value}，应为 {want}"]
    return []


CHECKS = {
    'vd': check_vd,
    'bisector': check_bisectors,
    'tri': check_tri,
    'farthest': check_farthest,
}


def run_audit(what: str, kinds=KINDS, count: int = 5, n: int = 36, seed: int = 0,
              r: Optional[int] = None, settings: Optional[Settings] = None) -> AuditReport:
    """
    Args:
        what: vd | bisector | tri | farthest | diameter

    Returns:
        AuditReport
    """
    report = AuditReport()
    if what == 'diameter':
        for kind in kinds:
            for i in range(count):
                g = generate(kind, n, seed + i)
                report.add(check_diameter(g, settings, r), f"{kind}#{seed + i}")
        return report
    if what not in CHECKS:
        raise BadParams(f"未知的检查项: {what}")
    check = CHECKS[what]
    for kind in kinds:
        for inst in random_instances(kind, count, n, seed, r=r):
            report.add(check(inst), inst.label)
    logger.info(f"{what}: {report.checked} 个实例，{len(report.failures)} 处不一致")
    return report
