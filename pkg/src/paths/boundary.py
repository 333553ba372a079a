"""
边界点距离表：每个边界点正向、反向各一次 Dijkstra
"""
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, List, Optional, Sequence

from ..core.graph import EmbeddedGraph, SHIFT, base_of
from ..errors import BadParams
from ..settings import Counters
from .dijkstra import dijkstra

logger = logging.getLogger(__name__)

ENTRY_BYTES = 32                      # 8 字节 base + 24 字节 tiebreak
INF_BASE = (1 << 63) - 1


class DistanceTable:
    """d(b, ·) 与 d(·, b)，b 取遍边界点"""

    def __init__(self, n: int, boundary: Sequence[int], from_boundary: Dict[int, List],
                 to_boundary: Dict[int, List]):
        self.n = n
        self.boundary = sorted(boundary)
        self.from_boundary = from_boundary
        self.to_boundary = to_boundary

    def d(self, u: int, v: int):
        """u、v 至少一个是边界点"""
        if u in self.from_boundary:
            return self.from_boundary[u][v]
        if v in self.to_boundary:
            return self.to_boundary[v][u]
        raise KeyError(f"({u}, {v}) 都不是边界点")

    def to_blob(self) -> bytes:
        """行优先、小端；每项 8 字节有符号 base + 24 字节扰动"""
        out = bytearray()
        for b in self.boundary:
            for row in (self.from_boundary[b], self.to_boundary[b]):
                for x in row:
                    out += _encode(x)
        return bytes(out)

    @classmethod
    def from_blob(cls, n: int, boundary: Sequence[int], blob: bytes) -> 'DistanceTable':
        boundary = sorted(boundary)
        if len(blob) != 2 * n * len(boundary) * ENTRY_BYTES:
            raise BadParams("距离表二进制长度不匹配")
        view = memoryview(blob)
        frm, to = {}, {}
        pos = 0
        for b in boundary:
            rows = []
            for _ in range(2):
                row = []
                for _ in range(n):
                    row.append(_decode(view[pos:pos + ENTRY_BYTES]))
                    pos += ENTRY_BYTES
                rows.append(row)
            frm[b], to[b] = rows
        return cls(n, boundary, frm, to)


def _encode(x) -> bytes:
    if x == math.inf:
        return INF_BASE.to_bytes(8, 'little', signed=True) + bytes(24)
    base = base_of(x)
    tb = x - (base << SHIFT)
    return base.to_bytes(8, 'little', signed=True) + tb.to_bytes(24, 'little', signed=True)


def _decode(chunk) -> object:
    base = int.from_bytes(chunk[:8], 'little', signed=True)
    if base == INF_BASE:
        return math.inf
    return (base << SHIFT) + int.from_bytes(chunk[8:], 'little', signed=True)


def boundary_distances(g: EmbeddedGraph, boundary: Sequence[int], threads: int = 1,
                       counters: Optional[Counters] = None) -> DistanceTable:
    """
    Args:
        g: 非负长度的图
        boundary: 边界点
        threads: 线程数（结果与调度无关）

    Returns:
        DistanceTable
    """
    rg = g.reversed()
    boundary = sorted(set(boundary))

    def rows(b):
        local = Counters()
        fwd = dijkstra(g, b, counters=local).dist
        bwd = dijkstra(rg, b, counters=local).dist
        return b, fwd, bwd, local

    if threads > 1 and len(boundary) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(rows, boundary))
    else:
        results = [rows(b) for b in boundary]

    frm, to = {}, {}
    for b, fwd, bwd, local in results:
        frm[b], to[b] = fwd, bwd
        if counters is not None:
            counters.merge(local)
    logger.debug(f"边界距离表: {len(boundary)} 个边界点")
    return DistanceTable(g.n, boundary, frm, to)
