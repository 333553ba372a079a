"""
直径计算流程

1. 三角化、势函数约化、加扰动
2. r-division
3. 情形 (i)：一端是边界点，正反两次 Dijkstra
4. 情形 (ii)：两端在同一 piece 内，带边界种子的 piece 内 Dijkstra
5. 情形 (iii)：两端在不同 piece，piece 边界上的加权 Voronoi 图 + 单元内最远点
"""
import logging
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from ..core.graph import EmbeddedGraph, base_of, pack
from ..core.triangulate import triangulate
from ..decomposition.rdivision import MIN_R, Piece, RDivision, r_division
from ..errors import (
    BadParams, Disconnected, NonContiguousUpdate, TieDetected, AssertionBreach,
    DisconnectedGraph, SiteNotOnHole,
)
from ..max_query.farthest import farthest_all, preprocess_max
from ..paths.boundary import DistanceTable, boundary_distances
from ..paths.dijkstra import dijkstra
from ..paths.exact import perturb
from ..paths.price import price_function, reduce_lengths
from ..settings import Counters, Settings
from ..voronoi.construct import construct_vd
from ..voronoi.preprocess import PieceIndex, preprocess_piece

logger = logging.getLogger(__name__)

Candidate = Tuple[int, int, int]        # (真实打包距离, 起点, 终点)


@dataclass
class DiameterResult:
    value: int
    witness: Tuple[int, int]
    cases: Dict[str, Optional[int]] = field(default_factory=dict)
    counters: Counters = field(default_factory=Counters)
    timings: Dict[str, float] = field(default_factory=dict)
    r: int = 0
    pieces: int = 0
    boundary: int = 0
    seed: int = 0
    piece_boundary: int = 0            # 单个 piece 的最大边界点数

    def to_dict(self) -> dict:
        return {
            'value': self.value,
            'witness': list(self.witness),
            'cases': self.cases,
            'counters': self.counters.as_dict(),
            'timings': {k: round(v, 6) for k, v in self.timings.items()},
            'r': self.r,
            'pieces': self.pieces,
            'boundary': self.boundary,
            'seed': self.seed,
            'piece_boundary': self.piece_boundary,
        }


def default_r(n: int) -> int:
    return max(MIN_R, math.ceil(n ** (2 / 3)))


def _better(a: Optional[Candidate], b: Optional[Candidate]) -> Optional[Candidate]:
    if a is None:
        return b
    if b is None:
        return a
    return b if b[0] > a[0] else a


@dataclass
class _Prepared:
    graph: EmbeddedGraph            # 约化 + 扰动后的三角化图
    phi: List[int]
    rdiv: RDivision
    table: DistanceTable

    def true_length(self, red, a: int, c: int) -> int:
        """约化距离换回真实距离"""
        return red - pack(self.phi[a]) + pack(self.phi[c])


def diameter(g: EmbeddedGraph, r: Optional[int] = None, settings: Optional[Settings] = None,
             counters: Optional[Counters] = None, cache=None) -> DiameterResult:
    """
    Args:
        g: 连通嵌入图，允许负长度（无负环）
        r: piece 大小，默认 ⌈n^{2/3}⌉
        settings: 运行配置
        counters: 工作量计数器
        cache: 可选的距离表缓存，提供 load_table(seed, r, n, boundary) / save_table(seed, r, table)

    Returns:
        DiameterResult

    Raises:
        Disconnected, NegativeCycle, TargetTooSmall
    """
    settings = settings or Settings()
    counters = counters if counters is not None else Counters()
    if g.n == 0:
        raise BadParams("空图没有直径")
    if g.n == 1:
        return DiameterResult(0, (0, 0), {}, counters, {}, r or 0, 1, 0, settings.seed)
    last = None
    for attempt in range(settings.max_retries + 1):
        seed = settings.seed + attempt
        try:
            return _diameter_once(g, r, settings, seed, counters, cache)
        except (TieDetected, NonContiguousUpdate) as exc:
            last = exc
            logger.warning(f"种子 {seed} 下出现并列 ({exc})，改用种子 {seed + 1} 重试")
    raise last


def prepare(g: EmbeddedGraph, seed: int) -> Tuple[EmbeddedGraph, List[int]]:
    """三角化、势函数约化、扰动；返回 (处理后的图, 势函数)"""
    tg = triangulate(g)
    phi = price_function(tg)
    return perturb(reduce_lengths(tg, phi), seed), phi


def _diameter_once(g: EmbeddedGraph, r: Optional[int], settings: Settings, seed: int,
                   counters: Counters, cache) -> DiameterResult:
    timings: Dict[str, float] = {}
    clock = time.perf_counter()
    pg, phi = prepare(g, seed)
    r = default_r(g.n) if r is None else r
    rdiv = r_division(pg, r, h_max=settings.h_max, c_b=settings.c_b, c_p=settings.c_p,
                      strict=settings.strict)
    timings['prepare'] = time.perf_counter() - clock

    clock = time.perf_counter()
    table = cache.load_table(seed, r, pg.n, rdiv.boundary) if cache is not None else None
    if table is None:
        table = boundary_distances(pg, rdiv.boundary, threads=settings.threads, counters=counters)
        if cache is not None:
            cache.save_table(seed, r, table)
    prep = _Prepared(pg, phi, rdiv, table)
    case_i = _case_i(prep)
    timings['case_i'] = time.perf_counter() - clock

    clock = time.perf_counter()
    case_ii = _case_ii(prep, counters)
    timings['case_ii'] = time.perf_counter() - clock

    clock = time.perf_counter()
    case_iii = case_iii_scan(prep, settings, counters)
    timings['case_iii'] = time.perf_counter() - clock

    best = _better(_better(case_i, case_ii), case_iii)
    value, a, c = best
    check = dijkstra(pg, a, counters=counters, check_ties=False).dist[c]
    if check == math.inf:
        raise Disconnected(f"顶点 {c} 从 {a} 不可达")
    if prep.true_length(check, a, c) != value:
        raise AssertionBreach(f"见证点对 ({a}, {c}) 的复核距离与结果不一致")

    result = DiameterResult(
        value=base_of(value), witness=(a, c),
        cases={name: (None if cand is None else base_of(cand[0]))
               for name, cand in (('i', case_i), ('ii', case_ii), ('iii', case_iii))},
        counters=counters, timings=timings, r=r, pieces=len(rdiv.pieces),
        boundary=len(rdiv.boundary), seed=seed,
        piece_boundary=max((len(p.boundary) for p in rdiv.pieces), default=0),
    )
    logger.info(f"直径 {result.value}，见证 {a} -> {c}（{len(rdiv.pieces)} 块，{len(rdiv.boundary)} 个边界点）")
    return result


def _case_i(prep: _Prepared) -> Optional[Candidate]:
    """一端是边界点"""
    best = None
    t = prep.table
    for b in t.boundary:
        for v, red in enumerate(t.from_boundary[b]):
            if red == math.inf:
                raise Disconnected(f"顶点 {v} 从边界点 {b} 不可达")
            best = _better(best, (prep.true_length(red, b, v), b, v))
        for v, red in enumerate(t.to_boundary[b]):
            if red == math.inf:
                raise Disconnected(f"边界点 {b} 从顶点 {v} 不可达")
            best = _better(best, (prep.true_length(red, v, b), v, b))
    return best


def _case_ii(prep: _Prepared, counters: Counters) -> Optional[Candidate]:
    """两端都不是边界点且在同一 piece：piece 内带边界种子的 Dijkstra"""
    rdiv, t = prep.rdiv, prep.table
    bset = set(rdiv.boundary)
    best = None
    for piece in rdiv.pieces:
        gids = piece.global_ids
        for lv, v in enumerate(gids):
            if v in bset:
                continue
            seeds = {lv: 0}
            for lb in piece.boundary:
                seeds[lb] = t.to_boundary[gids[lb]][v]
            dist = dijkstra(piece.graph, initial=seeds, counters=counters, check_ties=False).dist
            for lp, red in enumerate(dist):
                if red == math.inf:
                    continue
                p = gids[lp]
                best = _better(best, (prep.true_length(red, v, p), v, p))
    return best


def _index_piece(piece: Piece, prep: _Prepared, settings: Settings, counters: Counters) -> Optional[PieceIndex]:
    phi = [prep.phi[v] for v in piece.global_ids]
    try:
        index = preprocess_piece(piece, piece.boundary, phi=phi, counters=Counters(),
                                 strict=settings.strict, c_v=settings.c_v)
    except (DisconnectedGraph, SiteNotOnHole) as exc:
        logger.warning(f"piece {piece.index} 无法建立 Voronoi 预处理 ({exc})，改用 piece 内 Dijkstra")
        counters.fallbacks += 1
        return None
    preprocess_max(index)
    return index


def _scan_piece(piece: Piece, prep: _Prepared, index: Optional[PieceIndex],
                sources: Sequence[int], local: Counters) -> Optional[Candidate]:
    t = prep.table
    gids = piece.global_ids
    best = None
    for v0 in sources:
        weights = {lb: t.to_boundary[gids[lb]][v0] for lb in piece.boundary}
        if index is None:
            dist = dijkstra(piece.graph, initial=weights, counters=local, check_ties=False).dist
            lp = max(range(piece.n), key=lambda p: (dist[p] + pack(prep.phi[gids[p]]), p))
            total = dist[lp] + pack(prep.phi[gids[lp]])
        else:
            vd = construct_vd(index, piece.boundary, weights)
            _, top = farthest_all(vd)
            total, _, lp = top
        best = _better(best, (total - pack(prep.phi[v0]), v0, gids[lp]))
    return best


def case_iii_scan(prep: _Prepared, settings: Settings, counters: Counters) -> Optional[Candidate]:
    """
    两端在不同 piece 且都不是边界点：对每个 piece P 与 P 外的每个源点 v0，
    以 ω(b) = d(v0, b) 构造 ∂P 上的 Voronoi 图，取各单元最远点
    """
    rdiv = prep.rdiv
    bset = set(rdiv.boundary)
    inner = [v for v in range(prep.graph.n) if v not in bset]

    def scan(piece: Piece) -> Tuple[Optional[Candidate], Counters]:
        local = Counters()
        if not piece.boundary:
            return None, local
        members = set(piece.global_ids)
        sources = [v for v in inner if v not in members]
        if not sources:
            return None, local
        index = _index_piece(piece, prep, settings, local)
        best = _scan_piece(piece, prep, index, sources, local)
        if index is not None:
            local.merge(index.counters)
        return best, local

    if settings.threads > 1 and len(rdiv.pieces) > 1:
        with ThreadPoolExecutor(max_workers=settings.threads) as pool:
            results = list(pool.map(scan, rdiv.pieces))
    else:
        results = [scan(p) for p in rdiv.pieces]

    best = None
    for cand, local in results:
        counters.merge(local)
        best = _better(best, cand)
    return best
