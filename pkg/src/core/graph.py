"""
嵌入平面图
弧成对出现（rev），每个顶点给出出弧的逆时针旋转序，面由面游走导出（面在弧的左侧）
"""
import logging
from collections import deque
from typing import Dict, List, Optional, Sequence, Tuple

from ..errors import (
    MissingReverse, RotationMismatch, NotPlanarEmbedding, DisconnectedGraph, BadParams,
)
from ..settings import H_MAX

logger = logging.getLogger(__name__)

SHIFT = 256                  # 打包长度: base << SHIFT | tiebreak
TB_MASK = (1 << SHIFT) - 1
HALF = 1 << (SHIFT - 1)


def pack(base: int, tiebreak: int = 0) -> int:
    return (base << SHIFT) + tiebreak


def base_of(x: int) -> int:
    """打包长度（或其差/和）的基值部分"""
    return (x + HALF) >> SHIFT


class EmbeddedGraph:
    """带旋转系统的有向平面图"""

    def __init__(self, n: int, tails: Sequence[int], heads: Sequence[int], rev: Sequence[int],
                 lengths: Sequence[int], rotation: Sequence[Sequence[int]],
                 hole_arcs: Sequence[int] = (), coords: Optional[Sequence[Tuple[float, float]]] = None,
                 tiebreak: Optional[Sequence[int]] = None, h_max: int = H_MAX, check: bool = True):
        self.n = n
        self.tail = list(tails)
        self.head = list(heads)
        self.rev = list(rev)
        self.base = [int(x) for x in lengths]
        self.tiebreak = list(tiebreak) if tiebreak is not None else [0] * len(self.tail)
        self.length = [pack(b, t) for b, t in zip(self.base, self.tiebreak)]
        self.rotation = [list(r) for r in rotation]
        self.coords = [tuple(c) for c in coords] if coords is not None else None
        self.h_max = h_max

        if check:
            self._check_arcs()
        self._pos = [0] * self.m
        for v, rot in enumerate(self.rotation):
            for i, e in enumerate(rot):
                self._pos[e] = i

        self._walk_faces()
        self.hole_arcs = list(hole_arcs)
        self.holes = [self.left[a] for a in self.hole_arcs]
        if len(set(self.holes)) != len(self.holes):
            raise BadParams("同一个面被重复标记为洞")
        if len(self.holes) > h_max:
            raise BadParams(f"洞数 {len(self.holes)} 超过 h_max={h_max}")
        self.hole_index: Dict[int, int] = {f: i for i, f in enumerate(self.holes)}
        if check:
            self._check_planar()

    # ---- 基本访问 ----
    @property
    def m(self) -> int:
        return len(self.tail)

    @property
    def edge_count(self) -> int:
        return len(self.tail) // 2

    @property
    def face_count(self) -> int:
        return len(self.face_arcs)

    def out_arcs(self, v: int) -> List[int]:
        return self.rotation[v]

    def degree(self, v: int) -> int:
        return len(self.rotation[v])

    def rot_next(self, e: int) -> int:
        rot = self.rotation[self.tail[e]]
        return rot[(self._pos[e] + 1) % len(rot)]

    def rot_prev(self, e: int) -> int:
        rot = self.rotation[self.tail[e]]
        return rot[(self._pos[e] - 1) % len(rot)]

    def face_next(self, e: int) -> int:
        """左侧面上 e 的下一条弧"""
        return self.rot_prev(self.rev[e])

    def right(self, e: int) -> int:
        return self.left[self.rev[e]]

    def is_hole(self, f: int) -> bool:
        return f in self.hole_index

    def face_vertices(self, f: int) -> List[int]:
        return [self.tail[e] for e in self.face_arcs[f]]

    def edges(self) -> List[int]:
        """每条无向边取一条代表弧（id 较小者）"""
        return [e for e in range(self.m) if e < self.rev[e]]

    def find_arc(self, u: int, v: int) -> Optional[int]:
        for e in self.rotation[u]:
            if self.head[e] == v:
                return e
        return None

    def cut_next(self, e: int, inside) -> int:
        """
        沿点集边界逆时针游走：e 为离开点集的弧，返回下一条离开点集的弧
        途经的角都属于面 left(e)

        Args:
            e: 尾在点集内、头在点集外的弧
            inside: 顶点 -> 是否在点集内
        """
        a = self.rot_next(e)
        steps = 0
        while inside(self.head[a]):
            a = self.rot_next(self.rev[a])
            steps += 1
            if steps > self.m:
                raise BadParams(f"从弧 {e} 出发的边界游走没有终止")
        return a

    # ---- 派生 ----
    def _walk_faces(self) -> None:
        self.left = [-1] * self.m
        self.face_arcs: List[List[int]] = []
        for start in range(self.m):
            if self.left[start] != -1:
                continue
            f = len(self.face_arcs)
            cycle = []
            e = start
            while self.left[e] == -1:
                self.left[e] = f
                cycle.append(e)
                e = self.face_next(e)
            if e != start:
                raise NotPlanarEmbedding(f"面游走未回到起点弧 {start}")
            self.face_arcs.append(cycle)

    def _check_arcs(self) -> None:
        m = len(self.tail)
        if not (len(self.head) == len(self.rev) == len(self.base) == m):
            raise BadParams("弧数组长度不一致")
        for e in range(m):
            r = self.rev[e]
            if not 0 <= r < m or r == e or self.rev[r] != e:
                raise MissingReverse(f"弧 {e} 缺少反向弧")
            if self.tail[r] != self.head[e] or self.head[r] != self.tail[e]:
                raise MissingReverse(f"弧 {e} 的反向弧 {r} 端点不匹配")
            if not (0 <= self.tail[e] < self.n and 0 <= self.head[e] < self.n):
                raise BadParams(f"弧 {e} 端点越界")
        if len(self.rotation) != self.n:
            raise RotationMismatch("旋转序数量与顶点数不一致")
        seen = [False] * m
        for v, rot in enumerate(self.rotation):
            for e in rot:
                if not 0 <= e < m or self.tail[e] != v or seen[e]:
                    raise RotationMismatch(f"顶点 {v} 的旋转序包含非法弧 {e}")
                seen[e] = True
        if not all(seen):
            missing = seen.index(False)
            raise RotationMismatch(f"弧 {missing} 不在其尾点的旋转序中")

    def _check_planar(self) -> None:
        if self.n == 0 or self.m == 0:
            return
        reached = self.reachable(0)
        if len(reached) != self.n:
            raise DisconnectedGraph(f"图不连通: {len(reached)}/{self.n} 个顶点可达")
        euler = self.n - self.edge_count + self.face_count
        if euler != 2:
            raise NotPlanarEmbedding(f"欧拉公式不成立: V-E+F={euler}")

    def reachable(self, source: int) -> set:
        seen = {source}
        queue = deque([source])
        while queue:
            v = queue.popleft()
            for e in self.rotation[v]:
                w = self.head[e]
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        return seen

    # ---- 变换 ----
    def with_lengths(self, base: Sequence[int], tiebreak: Optional[Sequence[int]] = None) -> 'EmbeddedGraph':
        """拓扑不变，只替换长度"""
        clone = object.__new__(EmbeddedGraph)
        clone.__dict__.update(self.__dict__)
        clone.base = [int(x) for x in base]
        clone.tiebreak = list(tiebreak) if tiebreak is not None else list(self.tiebreak)
        clone.length = [pack(b, t) for b, t in zip(clone.base, clone.tiebreak)]
        return clone

    def reversed(self) -> 'EmbeddedGraph':
        """反向图：弧 e 取 rev(e) 的长度"""
        return self.with_lengths([self.base[self.rev[e]] for e in range(self.m)],
                                 [self.tiebreak[self.rev[e]] for e in range(self.m)])

    def to_dict(self) -> dict:
        data = {
            'n': self.n,
            'arcs': [{'id': e, 'tail': self.tail[e], 'head': self.head[e],
                      'rev': self.rev[e], 'len': self.base[e]} for e in range(self.m)],
            'rotation': [list(r) for r in self.rotation],
            'holes': list(self.holes),
        }
        if self.coords is not None:
            data['coords'] = [list(c) for c in self.coords]
        return data

    def __repr__(self):
        return f"<EmbeddedGraph n={self.n} arcs={self.m} faces={self.face_count} holes={self.holes}>"


def build_graph(n: int, arcs: Sequence[dict], rotation: Sequence[Sequence[int]],
                holes: Sequence[int] = (), coords=None, h_max: int = H_MAX) -> EmbeddedGraph:
    """
    由 JSON 结构构建嵌入图

    Args:
        n: 顶点数
        arcs: [{'id','tail','head','rev','len'}]
        rotation: 每个顶点的出弧逆时针序
        holes: 洞的面编号（按最小弧 id 起始的面游走编号）
        coords: 可选坐标

    Returns:
        EmbeddedGraph
    """
    ordered = sorted(arcs, key=lambda a: a['id'])
    if [a['id'] for a in ordered] != list(range(len(ordered))):
        raise BadParams("弧 id 必须是 0..m-1")
    for a in ordered:
        if a.get('rev') is None:
            raise MissingReverse(f"弧 {a['id']} 缺少 rev 字段")
    tails = [int(a['tail']) for a in ordered]
    heads = [int(a['head']) for a in ordered]
    revs = [int(a['rev']) for a in ordered]
    lens = [int(a['len']) for a in ordered]

    # 先不带洞构建，以确定面编号
    g = EmbeddedGraph(n, tails, heads, revs, lens, rotation, (), coords, h_max=h_max)
    hole_arcs = []
    for f in holes:
        if not 0 <= f < g.face_count:
            raise BadParams(f"洞面编号越界: {f}")
        hole_arcs.append(g.face_arcs[f][0])
    return EmbeddedGraph(n, tails, heads, revs, lens, rotation, hole_arcs, coords, h_max=h_max,
                         check=False)


def graph_from_edges(n: int, edges: Sequence[Tuple[int, int, int, int]],
                     coords: Sequence[Tuple[float, float]], hole_faces: str = 'outer',
                     h_max: int = H_MAX) -> EmbeddedGraph:
    """
    由直线嵌入构造图：旋转序按坐标极角排序

    Args:
        edges: (u, v, len_uv, len_vu)
        coords: 每个顶点的坐标
        hole_faces: 'outer' 把外面设为洞，'none' 不设洞
    """
    import math

    tails, heads, revs, lens = [], [], [], []
    for u, v, luv, lvu in edges:
        e = len(tails)
        tails += [u, v]
        heads += [v, u]
        revs += [e + 1, e]
        lens += [luv, lvu]
    rotation: List[List[int]] = [[] for _ in range(n)]
    for e, u in enumerate(tails):
        rotation[u].append(e)
    for u in range(n):
        x0, y0 = coords[u]
        rotation[u].sort(key=lambda e: math.atan2(coords[heads[e]][1] - y0, coords[heads[e]][0] - x0))

    g = EmbeddedGraph(n, tails, heads, revs, lens, rotation, (), coords, h_max=h_max)
    hole_arcs = []
    if hole_faces != 'none':
        areas = [_signed_area([coords[v] for v in g.face_vertices(f)]) for f in range(g.face_count)]
        if hole_faces == 'outer':
            outer = min(range(g.face_count), key=lambda f: areas[f])
            hole_arcs.append(g.face_arcs[outer][0])
    return EmbeddedGraph(n, tails, heads, revs, lens, rotation, hole_arcs, coords,
                         h_max=h_max, check=False)


def _signed_area(points: List[Tuple[float, float]]) -> float:
    area = 0.0
    for i, (x1, y1) in enumerate(points):
        x2, y2 = points[(i + 1) % len(points)]
        area += x1 * y2 - x2 * y1
    return area / 2.0


def mark_holes(g: EmbeddedGraph, faces: Sequence[int]) -> EmbeddedGraph:
    """返回把给定面标记为洞的新图（面编号不变）"""
    return EmbeddedGraph(g.n, g.tail, g.head, g.rev, g.base, g.rotation,
                         [g.face_arcs[f][0] for f in faces], g.coords, g.tiebreak,
                         h_max=g.h_max, check=False)
