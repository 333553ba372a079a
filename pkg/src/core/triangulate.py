"""
三角化：用长度为 INF 的对角线把每个非洞面扇形剖分成三角形
"""
import logging
from collections import Counter as _Counter
from typing import List

from .graph import EmbeddedGraph

logger = logging.getLogger(__name__)


def inf_length(g: EmbeddedGraph) -> int:
    """INF = (n+1)·maxlen + 1，保证对角线不会出现在有限最短路上"""
    maxlen = max((abs(b) for b in g.base), default=1) or 1
    return (g.n + 1) * maxlen + 1


def triangulate(g: EmbeddedGraph) -> EmbeddedGraph:
    """
    对所有非洞面做扇形三角化

    Args:
        g: 嵌入图

    Returns:
        新图（原弧 id、长度与洞不变，新对角线追加在末尾）
    """
    inf = inf_length(g)
    tails, heads, revs = list(g.tail), list(g.head), list(g.rev)
    base, tb = list(g.base), list(g.tiebreak)
    rotation: List[List[int]] = [list(r) for r in g.rotation]
    added = 0

    for f, walk in enumerate(g.face_arcs):
        k = len(walk)
        if k <= 3 or g.is_hole(f):
            continue
        counts = _Counter(g.tail[e] for e in walk)
        start = next((i for i, e in enumerate(walk) if counts[g.tail[e]] == 1), None)
        if start is None:
            logger.warning(f"面 {f} 没有只出现一次的顶点，跳过三角化")
            continue
        walk = walk[start:] + walk[:start]
        w0 = g.tail[walk[0]]

        anchor = walk[0]
        for i in range(2, k - 1):
            wi = g.tail[walk[i]]
            d = len(tails)
            tails += [w0, wi]
            heads += [wi, w0]
            revs += [d + 1, d]
            base += [inf, inf]
            tb += [0, 0]
            # w0 处：d_2 .. d_{k-2} 依次插在 e_0 之后
            rot0 = rotation[w0]
            rot0.insert(rot0.index(anchor) + 1, d)
            anchor = d
            # w_i 处：rev(d_i) 插在 e_i 之后
            roti = rotation[wi]
            roti.insert(roti.index(walk[i]) + 1, d + 1)
            added += 1

    if added == 0:
        return g
    logger.debug(f"三角化添加 {added} 条对角线")
    return EmbeddedGraph(g.n, tails, heads, revs, base, rotation, g.hole_arcs, g.coords, tb,
                         h_max=g.h_max)


def is_triangulated(g: EmbeddedGraph) -> bool:
    return all(len(walk) == 3 for f, walk in enumerate(g.face_arcs) if not g.is_hole(f))
