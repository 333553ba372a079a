"""
二站点平分线族
δ 从小到大扫描，每个临界值处一组顶点从 v 侧切换到 u 侧；
每个版本是一棵持久化树，元素为割弧 x→y（x 在 u 侧），按 pre_u(x→y) 排序

装饰只含与站点数无关的量：树弧标记、pre_v、到各洞的余树深度、洞关联标记，
以及最远点查询要用的 ℓ(e*)、ℓ(f*)、b(f*)（u、v 两侧各一份）
"""
import logging
import threading
from bisect import bisect_left
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

from ..core.cotree import NO_LABEL
from ..core.graph import EmbeddedGraph
from ..errors import IndexOutOfRange, NonContiguousUpdate, NotOnVersion, BadParams
from . import persistent
from .delta import DeltaTable, SITE_SCALE

logger = logging.getLogger(__name__)


class Layout:
    """装饰元组各分量的下标"""

    FLAG_U = 0        # x→y 是 T_u 的树弧
    FLAG_V = 1        # y→x 是 T_v 的树弧
    PRE_V = 2         # pre_v(y→x)
    LE_U = 3          # ℓ_u(e*)：x 的标号
    LE_V = 4          # ℓ_v(e*)：y 的标号
    LF_U = 5          # ℓ_u(f*)，f = left(e)
    LF_V = 6
    B_U = 7           # b_u(f*)
    B_V = 8

    def __init__(self, hole_count: int):
        H = hole_count
        self.holes = H
        self.DEPTH_U = 9              # −ℓ_u^h(left(e))
        self.DEPTH_V = 9 + H          # −ℓ_v^h(left(e))
        self.HOLE = 9 + 2 * H         # left(e) 或 right(e) 为洞 h
        self.width = 9 + 3 * H

    def side(self, is_u: bool) -> Dict[str, int]:
        """某一侧站点的分量下标"""
        if is_u:
            return {'flag': self.FLAG_U, 'le': self.LE_U, 'lf': self.LF_U, 'b': self.B_U,
                    'depth': self.DEPTH_U}
        return {'flag': self.FLAG_V, 'le': self.LE_V, 'lf': self.LF_V, 'b': self.B_V,
                'depth': self.DEPTH_V}


@dataclass
class Version:
    """平分线族的一个版本"""
    family: 'BisectorFamily'
    index: int
    root: Optional[persistent.Node]

    @property
    def length(self) -> int:
        return persistent.size(self.root)

    def __len__(self) -> int:
        return self.length

    def node(self, i: int, counters=None) -> persistent.Node:
        return persistent.kth(self.root, i, counters)

    def arc(self, i: int, counters=None) -> int:
        return persistent.kth(self.root, i, counters).elem

    def dec(self, i: int, counters=None) -> tuple:
        return persistent.kth(self.root, i, counters).dec

    def arcs(self) -> List[int]:
        return [node.elem for node in persistent.iterate(self.root)]

    def tour(self, pos: int) -> int:
        """存储位置与 u 侧游走下标互换（对合）"""
        return pos if self.family.tour_ascending else self.length - 1 - pos

    def element_position(self, arc: int, counters=None) -> Optional[int]:
        """arc 作为元素（u→v 方向）的存储位置"""
        if self.length == 0:
            return None
        pos = search_by_pre(self, self.family.u, self.family.pre_u[arc], counters)
        return pos if self.arc(pos, counters) == arc else None

    def position_of(self, arc: int, counters=None) -> int:
        """弧（或其反向弧）在本版本中的位置"""
        fam = self.family
        if self.length == 0:
            raise NotOnVersion(f"弧 {arc} 不在空版本上")
        pos = self.element_position(arc, counters)
        if pos is not None:
            return pos
        pos = self.element_position(fam.graph.rev[arc], counters)
        if pos is not None:
            return pos
        raise NotOnVersion(f"弧 {arc} 不在版本 {self.index} 上")

    def junction_tours(self, face: int, counters=None) -> List[int]:
        """满足 left(元素) = face 的游走下标；这些元素之后的对偶顶点就是 face"""
        g = self.family.graph
        if self.length == 0:
            return []
        if g.is_hole(face):
            positions = hole_positions(self, face, counters=counters)
            return sorted(self.tour(p) for p in positions if g.left[self.arc(p, counters)] == face)
        found = []
        for a in g.face_arcs[face]:
            pos = self.element_position(a, counters)
            if pos is not None:
                found.append(self.tour(pos))
        return sorted(found)


@dataclass
class BisectorFamily:
    table: DeltaTable
    u: int
    v: int
    criticals: List[int]
    roots: List[Optional[persistent.Node]]
    group_of: List[int]
    layout: Layout
    tour_ascending: bool = True
    scaled: List[int] = field(default_factory=list)

    def __post_init__(self):
        self.scaled = [SITE_SCALE * c for c in self.criticals]

    @property
    def graph(self) -> EmbeddedGraph:
        return self.table.graph

    @property
    def pre_u(self) -> List[int]:
        return self.table.data[self.u].pre

    @property
    def pre_v(self) -> List[int]:
        return self.table.data[self.v].pre

    @property
    def version_count(self) -> int:
        return len(self.roots)

    def delta_key(self, delta: int) -> int:
        """δ = ω(v) − ω(u) 加上站点序号后的比较键"""
        return SITE_SCALE * delta + self.table.rank[self.v] - self.table.rank[self.u]

    def version(self, i: int) -> Version:
        if not 0 <= i < len(self.roots):
            raise IndexOutOfRange(f"版本 {i} 不存在")
        return Version(self, i, self.roots[i])

    def version_for(self, weights) -> Version:
        return version_at(self, weights[self.v] - weights[self.u])

    def in_u(self, version_index: int):
        """版本中 u 侧的成员判定"""
        group_of = self.group_of
        return lambda p: group_of[p] < version_index

    def other(self, site: int) -> int:
        if site == self.u:
            return self.v
        if site == self.v:
            return self.u
        raise BadParams(f"站点 {site} 不是 β*({self.u},{self.v}) 的端点")

    def node_count(self) -> int:
        """所有版本共享后的节点总数"""
        seen = set()
        for root in self.roots:
            stack = [root]
            while stack:
                node = stack.pop()
                if node is None or id(node) in seen:
                    continue
                seen.add(id(node))
                stack.append(node.left)
                stack.append(node.right)
        return len(seen)


def _cyclic_breaks(positions: Sequence[int], L: int) -> int:
    """位置集合在长度 L 的环上分成几段"""
    if not positions or len(positions) >= L:
        return 1 if positions else 0
    ps = sorted(set(positions))
    breaks = 0
    for a, b in zip(ps, ps[1:] + [ps[0] + L]):
        if b - a != 1:
            breaks += 1
    return breaks


def build_family(p, u: int, v: int, table: DeltaTable) -> BisectorFamily:
    """
    构造 β*(u,v) 的全部版本

    Args:
        p: piece 或嵌入图（只用于一致性检查）
        u, v: 站点，要求 rank(u) < rank(v)
        table: DeltaTable

    Returns:
        BisectorFamily，版本 i 的 u 侧为前 i 个临界组

    Raises:
        NonContiguousUpdate: 某个临界组的删除或插入在环上不连续（输入有并列）
    """
    g = table.graph
    if getattr(p, 'graph', p) is not g:
        raise BadParams("δ 表与 piece 不一致")
    if u == v:
        raise BadParams("平分线需要两个不同站点")
    du, dv = table.site(u), table.site(v)
    cot_u, cot_v = du.cotree, dv.cotree
    layout = Layout(len(g.holes))
    in_u = [False] * g.n

    def decorate(e: int) -> tuple:
        x, y = g.tail[e], g.head[e]
        f = g.left[e]
        lf_u = lf_v = NO_LABEL
        b_u = b_v = 0
        if not g.is_hole(f) and len(g.face_arcs[f]) == 3:
            a_next = g.face_next(e)              # y→z
            if in_u[g.head[a_next]]:
                a3 = g.face_next(a_next)         # z→x，第三条边在 u 侧
                lf_u = cot_u.hanging_label(a3)
                b_u = int(cot_u.in_skeleton_edge(a3))
            else:
                lf_v = cot_v.hanging_label(a_next)
                b_v = int(cot_v.in_skeleton_edge(a_next))
        dec = [
            1 if du.tree.parent_arc[y] == e else 0,
            1 if dv.tree.parent_arc[x] == g.rev[e] else 0,
            dv.pre[g.rev[e]],
            cot_u.vertex_label[x],
            cot_v.vertex_label[y],
            lf_u, lf_v, b_u, b_v,
        ]
        dec += [-depth[f] for depth in cot_u.hole_depth]
        dec += [-depth[f] for depth in cot_v.hole_depth]
        dec += [1 if h in (f, g.right(e)) else 0 for h in g.holes]
        return tuple(dec)

    delta = [du.dist[q] - dv.dist[q] for q in range(g.n)]
    order = sorted(range(g.n), key=lambda q: (delta[q], q))
    groups: List[List[int]] = []
    criticals: List[int] = []
    for q in order:
        if not criticals or delta[q] != criticals[-1]:
            criticals.append(delta[q])
            groups.append([])
        groups[-1].append(q)
    group_of = [0] * g.n
    for i, grp in enumerate(groups):
        for q in grp:
            group_of[q] = i

    pre_u = du.pre
    roots: List[Optional[persistent.Node]] = [None]
    root = None
    present = [False] * g.m
    for i, grp in enumerate(groups):
        members = set(grp)
        removed, added = [], []
        for z in grp:
            for e in g.rotation[z]:
                y = g.head[e]
                if in_u[y]:
                    removed.append(g.rev[e])
                elif y not in members:
                    added.append(e)

        old_len = persistent.size(root)
        old_pos = [persistent.rank(root, pre_u[a]) for a in removed]
        for z in grp:
            in_u[z] = True
        for a in removed:
            root = persistent.delete(root, pre_u[a])
            present[a] = False
        for e in added:
            root = persistent.insert(root, pre_u[e], e, decorate(e))
            present[e] = True
        new_pos = [persistent.rank(root, pre_u[e]) for e in added]
        if _cyclic_breaks(old_pos, old_len) > 1 or _cyclic_breaks(new_pos, persistent.size(root)) > 1:
            raise NonContiguousUpdate(f"β*({u},{v}) 在第 {i} 个临界值处的更新不连续")

        # 第三个顶点换边的面：对边的 ℓ(f*)/b(f*) 要重算
        fresh = set(added)
        for z in grp:
            for a in g.rotation[z]:
                if g.is_hole(g.left[a]) or len(g.face_arcs[g.left[a]]) != 3:
                    continue
                o = g.face_next(a)
                if present[o] and o not in fresh:
                    root = persistent.insert(root, pre_u[o], o, decorate(o))
                    fresh.add(o)
        roots.append(root)

    family = BisectorFamily(table, u, v, criticals, roots, group_of, layout)
    family.tour_ascending = _tour_direction(family)
    logger.debug(f"β*({u},{v}): {len(roots)} 个版本")
    return family


def _tour_direction(family: BisectorFamily) -> bool:
    """沿 u 侧边界游走时存储顺序是否为升序"""
    g = family.graph
    best = max(range(family.version_count), key=lambda i: persistent.size(family.roots[i]))
    version = family.version(best)
    if version.length < 3:
        return True
    inside = family.in_u(best)
    a0, a1 = version.arc(0), version.arc(1)
    if g.cut_next(a0, inside) == a1:
        return True
    if g.cut_next(a1, inside) == a0:
        return False
    logger.warning(f"β*({family.u},{family.v}) 的游走方向无法确定，按升序处理")
    return True


def version_at(f: BisectorFamily, delta: int) -> Version:
    """δ = ω(v) − ω(u) 所在半开区间对应的版本"""
    return f.version(bisect_left(f.scaled, f.delta_key(delta)))


def kth_arc(version: Version, k: int) -> int:
    return version.arc(k)


def _pre_v_select(version: Version, counters=None):
    """按 pre_v 升序的第 t 个元素的存储位置；pre_v 沿存储循环单调"""
    fam = version.family
    L = version.length
    j = fam.layout.PRE_V
    get = lambda i: version.dec(i, counters)[j]
    if L <= 2:
        order = sorted(range(L), key=get)
        return lambda t: order[t]
    a, b, c = get(0), get(1), get(2)
    ascending = (a < b < c) or (b < c < a) or (c < a < b)
    idx = (lambda i: i) if ascending else (lambda i: L - 1 - i)
    lo, hi = 0, L - 1
    while lo < hi:
        mid = (lo + hi) // 2
        if get(idx(mid)) > get(idx(hi)):
            lo = mid + 1
        else:
            hi = mid
    start = lo
    return lambda t: idx((start + t) % L)


def pre_select(version: Version, site: int, t: int, counters=None) -> int:
    """pre_site 第 t 小（从 0 开始）的元素的存储位置"""
    fam = version.family
    if not 0 <= t < version.length:
        raise IndexOutOfRange(f"秩 {t} 超出 [0, {version.length})")
    if site == fam.u:
        return t
    if site != fam.v:
        raise BadParams(f"站点 {site} 不是 β*({fam.u},{fam.v}) 的端点")
    return _pre_v_select(version, counters)(t)


def pre_rank(version: Version, site: int, key: int, counters=None) -> int:
    """本版本中 pre_site 严格小于 key 的元素个数"""
    fam = version.family
    L = version.length
    if L == 0:
        return 0
    if site == fam.u:
        return persistent.rank(version.root, key, counters)
    if site != fam.v:
        raise BadParams(f"站点 {site} 不是 β*({fam.u},{fam.v}) 的端点")
    select = _pre_v_select(version, counters)
    j = fam.layout.PRE_V
    lo, hi = 0, L
    while lo < hi:
        mid = (lo + hi) // 2
        if version.dec(select(mid), counters)[j] < key:
            lo = mid + 1
        else:
            hi = mid
    return lo


def search_by_pre(version: Version, site: int, key: int, counters=None) -> int:
    """
    按站点的前序标号在版本上定位：返回循环意义下第一个标号 ≥ key 的位置

    Args:
        site: 版本的 u 或 v
    """
    L = version.length
    if L == 0:
        raise IndexOutOfRange("空版本")
    return pre_select(version, site, pre_rank(version, site, key, counters) % L, counters)


def range_max(version: Version, lo: int, hi: int, j: int, counters=None):
    """第 j 个装饰分量在 [lo, hi] 上的 (位置, 最大值)"""
    return persistent.range_max(version.root, lo, hi, j, counters)


def argmin_holedepth(version: Version, site: int, hole: int, lo: int = 0, hi: Optional[int] = None,
                     counters=None) -> int:
    """
    存储区间 [lo, hi] 内，left 面到洞 hole 的余树（T*_site）深度最小的元素位置

    Returns:
        存储位置；对应的面为 left(arc(pos))
    """
    fam = version.family
    g = fam.graph
    if hole not in g.hole_index:
        raise BadParams(f"面 {hole} 不是洞")
    if version.length == 0:
        raise IndexOutOfRange("空版本")
    hi = version.length - 1 if hi is None else hi
    base = fam.layout.DEPTH_U if site == fam.u else fam.layout.DEPTH_V
    pos, _ = persistent.range_max(version.root, lo, hi, base + g.hole_index[hole], counters)
    return pos


def hole_positions(version: Version, hole: int, lo: int = 0, hi: Optional[int] = None,
                   counters=None) -> List[int]:
    """存储区间内 left 或 right 为洞 hole 的元素位置"""
    g = version.family.graph
    if hole not in g.hole_index or version.length == 0:
        return []
    hi = version.length - 1 if hi is None else hi
    j = version.family.layout.HOLE + g.hole_index[hole]
    return persistent.range_collect(version.root, lo, hi, j, counters)


def hole_incidences(version: Version, hole: int, counters=None) -> List[int]:
    """版本中与洞 hole 相邻的弧"""
    return [version.arc(i, counters) for i in hole_positions(version, hole, counters=counters)]


class FamilyStore:
    """按站点对缓存的平分线族，首次访问时构造"""

    def __init__(self, p, table: DeltaTable):
        self.piece = p
        self.table = table
        self._families: Dict[tuple, BisectorFamily] = {}
        self._lock = threading.Lock()

    @property
    def graph(self) -> EmbeddedGraph:
        return self.table.graph

    def pair(self, a: int, b: int) -> tuple:
        return (a, b) if self.table.rank[a] < self.table.rank[b] else (b, a)

    def get(self, a: int, b: int) -> BisectorFamily:
        key = self.pair(a, b)
        family = self._families.get(key)
        if family is None:
            with self._lock:
                family = self._families.get(key)
                if family is None:
                    family = build_family(self.piece, key[0], key[1], self.table)
                    self._families[key] = family
        return family

    def build_all(self) -> int:
        """构造全部站点对；返回族数"""
        sites = self.table.sites
        for i, a in enumerate(sites):
            for b in sites[i + 1:]:
                self.get(a, b)
        return len(self._families)

    def __len__(self) -> int:
        return len(self._families)
