"""
测试图生成器
所有生成器对固定种子确定，输出带坐标的直线嵌入
"""
import logging
import math
import random
from typing import List, Optional, Tuple

from ..core.graph import EmbeddedGraph, _signed_area, graph_from_edges, mark_holes
from ..errors import BadParams

logger = logging.getLogger(__name__)

Edge = Tuple[int, int, int, int]


def _lengths(rng: Optional[random.Random], max_len: int, directed: bool) -> Tuple[int, int]:
    if rng is None or max_len <= 1:
        return 1, 1
    a = rng.randint(1, max_len)
    b = rng.randint(1, max_len) if directed else a
    return a, b


def grid(k: int, l: Optional[int] = None, max_len: int = 1, seed: Optional[int] = None,
         directed: bool = False) -> EmbeddedGraph:
    """
    k 行 l 列的网格（四边形网格，外面为洞）

    Args:
        k, l: 行数与列数，l 缺省等于 k
        max_len: 大于 1 时边长在 [1, max_len] 中随机
        seed: 随机边长的种子
        directed: 两个方向独立取长度
    """
    l = k if l is None else l
    if k < 1 or l < 1 or k * l < 2:
        raise BadParams(f"网格尺寸不合法: {k}x{l}")
    rng = random.Random(seed) if max_len > 1 else None
    coords = [(float(j), float(i)) for i in range(k) for j in range(l)]
    edges: List[Edge] = []
    for i in range(k):
        for j in range(l):
            v = i * l + j
            if j + 1 < l:
                edges.append((v, v + 1, *_lengths(rng, max_len, directed)))
            if i + 1 < k:
                edges.append((v, v + l, *_lengths(rng, max_len, directed)))
    return graph_from_edges(k * l, edges, coords, hole_faces='outer')


def random_triangulation(n: int, seed: int = 0, max_len: int = 100,
                         directed: bool = False) -> EmbeddedGraph:
    """
    随机三角剖分的圆盘：从一个大三角形出发，每次在随机选中的三角形内部插入一个点并连到三个角

    Args:
        n: 顶点数（>= 3）
        seed: 随机种子
        max_len: 边长上限
        directed: 两个方向独立取长度

    Returns:
        外面为洞的三角化图
    """
    if n < 3:
        raise BadParams(f"随机三角剖分至少需要 3 个顶点: {n}")
    rng = random.Random(seed)
    coords: List[Tuple[float, float]] = [(0.0, 0.0), (1.0, 0.0), (0.5, math.sqrt(3) / 2)]
    triangles: List[Tuple[int, int, int]] = [(0, 1, 2)]
    pairs = [(0, 1), (1, 2), (0, 2)]

    for v in range(3, n):
        t = rng.randrange(len(triangles))
        a, b, c = triangles[t]
        # 重心坐标严格为正，新点落在三角形内部
        wa, wb, wc = (rng.uniform(0.1, 1.0) for _ in range(3))
        total = wa + wb + wc
        x = (wa * coords[a][0] + wb * coords[b][0] + wc * coords[c][0]) / total
        y = (wa * coords[a][1] + wb * coords[b][1] + wc * coords[c][1]) / total
        coords.append((x, y))
        triangles[t] = (a, b, v)
        triangles.append((b, c, v))
        triangles.append((c, a, v))
        pairs += [(a, v), (b, v), (c, v)]

    edges = [(u, v, *_lengths(rng, max_len, directed)) for u, v in pairs]
    g = graph_from_edges(n, edges, coords, hole_faces='outer')
    logger.debug(f"随机三角剖分 n={n} seed={seed}: {g!r}")
    return g


def cylinder(rings: int, per_ring: int, max_len: int = 1, seed: Optional[int] = None,
             directed: bool = False) -> EmbeddedGraph:
    """
    同心圆环组成的柱面网格，最内圈与最外圈各是一个洞

    Args:
        rings: 圈数（>= 2）
        per_ring: 每圈顶点数（>= 3）
    """
    if rings < 2 or per_ring < 3:
        raise BadParams(f"柱面参数不合法: rings={rings}, per_ring={per_ring}")
    rng = random.Random(seed) if max_len > 1 else None
    coords = []
    for i in range(rings):
        radius = 1.0 + i
        for j in range(per_ring):
            angle = 2 * math.pi * j / per_ring
            coords.append((radius * math.cos(angle), radius * math.sin(angle)))

    edges: List[Edge] = []
    for i in range(rings):
        for j in range(per_ring):
            v = i * per_ring + j
            edges.append((v, i * per_ring + (j + 1) % per_ring, *_lengths(rng, max_len, directed)))
            if i + 1 < rings:
                edges.append((v, v + per_ring, *_lengths(rng, max_len, directed)))

    g = graph_from_edges(rings * per_ring, edges, coords, hole_faces='none')
    areas = [_signed_area([coords[v] for v in g.face_vertices(f)]) for f in range(g.face_count)]
    outer = min(range(g.face_count), key=lambda f: areas[f])
    inner_ring = set(range(per_ring))
    inner = next(f for f in range(g.face_count)
                 if f != outer and set(g.face_vertices(f)) == inner_ring)
    return mark_holes(g, [outer, inner])
