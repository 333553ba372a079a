"""
piece 预处理：站点的最短路树、δ 表与平分线族
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence

from ..bisectors import DeltaTable, FamilyStore, precompute_delta
from ..core.graph import EmbeddedGraph
from ..errors import SiteNotPreprocessed, WeightsMissing
from ..settings import C_V, Counters

logger = logging.getLogger(__name__)


@dataclass
class PieceIndex:
    piece: object
    table: DeltaTable
    store: FamilyStore
    phi: Optional[List[int]] = None
    counters: Counters = field(default_factory=Counters)
    max_index: Dict[int, object] = field(default_factory=dict)
    strict: bool = False
    c_v: int = C_V
    _walks: Dict[int, Dict[int, int]] = field(default_factory=dict, repr=False)
    _spots: Dict[int, Dict[int, int]] = field(default_factory=dict, repr=False)

    @property
    def graph(self) -> EmbeddedGraph:
        return self.table.graph

    @property
    def sites(self) -> List[int]:
        return self.table.sites

    def check(self, sites: Sequence[int], weights: Mapping[int, int]) -> None:
        for s in sites:
            if s not in self.table:
                raise SiteNotPreprocessed(f"站点 {s} 未预处理")
            if s not in weights:
                raise WeightsMissing(f"站点 {s} 没有权重")

    def walk_index(self, h: int) -> Dict[int, int]:
        """洞 h 的面游走中每条弧的下标"""
        if h not in self._walks:
            self._walks[h] = {a: i for i, a in enumerate(self.graph.face_arcs[h])}
        return self._walks[h]

    def vertex_index(self, h: int) -> Dict[int, int]:
        """洞 h 上每个顶点在游走中第一次出现的下标"""
        if h not in self._spots:
            spots: Dict[int, int] = {}
            for i, v in enumerate(self.graph.face_vertices(h)):
                spots.setdefault(v, i)
            self._spots[h] = spots
        return self._spots[h]

    def hole_groups(self, sites: Sequence[int]) -> Dict[int, List[int]]:
        """按所在洞分组，组内按洞边界游走顺序排列"""
        groups: Dict[int, List[int]] = {}
        for s in sites:
            groups.setdefault(self.table.data[s].hole, []).append(s)
        for h, members in groups.items():
            if h is None:
                members.sort()
                continue
            position = self.vertex_index(h)
            members.sort(key=lambda s: position[s])
        return groups


def preprocess_piece(p, sites: Optional[Sequence[int]] = None, phi: Optional[Sequence[int]] = None,
                     counters: Optional[Counters] = None, strict: bool = False,
                     eager: bool = False, c_v: int = C_V) -> PieceIndex:
    """
    Args:
        p: Piece（或嵌入图）
        sites: 站点，默认取 piece 的边界点
        phi: 局部编号下的势函数，用于把约化距离换回真实距离
        eager: 立即构造全部站点对的平分线族
        c_v: Voronoi 顶点数常数，构造出的图顶点数不超过 c_v·|S′|

    Returns:
        PieceIndex
    """
    g = getattr(p, 'graph', p)
    if sites is None:
        sites = getattr(p, 'boundary', None)
        if sites is None:
            sites = sorted({v for h in g.holes for v in g.face_vertices(h)})
    counters = counters if counters is not None else Counters()
    table = precompute_delta(p, sites, counters=counters, phi=phi)
    store = FamilyStore(p, table)
    if eager:
        built = store.build_all()
        logger.debug(f"piece 预处理: {built} 个平分线族")
    return PieceIndex(p, table, store, list(phi) if phi is not None else None, counters,
                      strict=strict, c_v=c_v)
