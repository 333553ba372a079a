"""
三色 Voronoi 顶点查找

第三个站点 r 加入后，平分线 β*(g,b) 上端点被 r 夺走的弧构成一段连续的循环子路径，
这段子路径两端的对偶顶点就是 {r, g, b} 的三色顶点。
每条弧的 Δ 值按需由三棵最短路树的距离算出：
    Δ^r(x→y) = max(S·(ω_c1 + d(c1,x) − d(r,x)) + rk_c1 − rk_r, 同式对 (c2, y))
其中 c1、c2 为弧的近侧与远侧站点。死亡当且仅当 Δ^r > S·ω(r)。

Δ 序列在循环意义下弱双调（三站点同洞时从洞之后起弱单调），所以：
先用余树到 r 所在洞的深度找到最大值，再在双调序列上二分；
平台用 GetInterval（紧端点的最高同值祖先 + 前序区间）跳过。
"""
import logging
from dataclasses import dataclass, field
from typing import List, Mapping, Optional, Sequence, Tuple

from ..bisectors.delta import DeltaTable, SITE_SCALE
from ..bisectors.family import (
    FamilyStore, argmin_holedepth, pre_rank, pre_select,
)
from ..core.trees import level_ancestor_search
from ..errors import AssertionBreach, BadParams, EmptyBisector, NotOnVersion, WeightsMissing
from ..settings import Counters
from .views import BisectorView

logger = logging.getLogger(__name__)


@dataclass
class TriQuery:
    """
    三站点查询 (r, g, b)，或扩展形式 (r, g, B)

    扩展形式需要调用方给出 β*(g, B) 的视图（每个边界环一个）
    """
    store: FamilyStore
    r: int
    g: int
    others: Tuple[int, ...]
    weights: Mapping[int, int]
    views: List[BisectorView] = field(default_factory=list)
    counters: Optional[Counters] = None
    strict: bool = False

    def __post_init__(self):
        self.others = tuple(self.others)
        if not self.others:
            raise BadParams("查询至少需要一个 b 站点")
        if self.r == self.g or self.r in self.others or self.g in self.others:
            raise BadParams("r、g 与 B 必须互不相同")
        for s in self.sites:
            if s not in self.weights:
                raise WeightsMissing(f"站点 {s} 没有权重")
            self.table.site(s)

    @property
    def table(self) -> DeltaTable:
        return self.store.table

    @property
    def sites(self) -> Tuple[int, ...]:
        return (self.r, self.g) + self.others


@dataclass(frozen=True)
class TriVertex:
    face: int
    cells: Tuple[int, int, int]          # (r, 近侧, 远侧)
    hole: bool = False


@dataclass
class TriResult:
    vertices: List[TriVertex] = field(default_factory=list)
    full_bisector_survives: bool = False
    swallowed: bool = False
    empty_bisector: bool = False
    dominated: Tuple[int, ...] = ()
    dying: Optional[Tuple[int, int]] = None    # 死亡段（视图下标，循环闭区间）

    @property
    def faces(self) -> List[int]:
        return [v.face for v in self.vertices]

    def __len__(self) -> int:
        return len(self.vertices)


# ---- Δ 值 ----
def endpoint_key(q: TriQuery, c: int, p: int) -> int:
    """S·(ω_c + d(c,p) − d(r,p)) + rk_c − rk_r；大于 S·ω(r) 表示 r 夺走 p"""
    table = q.table
    rk = table.rank
    return SITE_SCALE * (q.weights[c] + table.d(c, p) - table.d(q.r, p)) + rk[c] - rk[q.r]


def delta_at(view: BisectorView, k: int, q: TriQuery) -> int:
    """视图第 k 条弧的 Δ^r 键"""
    part, i = view.locate(k % len(view))
    e = part.arc(i, view.counters)
    g = part.family.graph
    return max(endpoint_key(q, part.near, g.tail[e]), endpoint_key(q, part.far, g.head[e]))


def delta_sequence(view: BisectorView, q: TriQuery) -> List[int]:
    """整个视图的 Δ^r 序列（线性扫描，供检查用）"""
    return [delta_at(view, k, q) for k in range(len(view))]


def delta_r(v: int, q: TriQuery):
    """Δ^r(v) = min_c (ω(c) + d(c,v)) − d(r,v)，c 取遍 g 与 B"""
    table = q.table
    return min(q.weights[c] + table.d(c, v) for c in (q.g,) + q.others) - table.d(q.r, v)


def primary_view(q: TriQuery) -> BisectorView:
    """三站点形式下 β*(g,b) 在当前权重下的版本，从 g 一侧看"""
    if len(q.others) != 1:
        raise BadParams("三站点形式只能有一个 b")
    fam = q.store.get(q.g, q.others[0])
    return BisectorView.of_version(fam.version_for(q.weights), near=q.g, counters=q.counters)


def _fallback(q: TriQuery, message: str) -> None:
    if q.counters is not None:
        q.counters.fallbacks += 1
    if q.strict:
        raise AssertionBreach(message)
    logger.warning(message)


def _linear_max(view: BisectorView, q: TriQuery) -> Tuple[int, int]:
    seq = delta_sequence(view, q)
    best = max(seq)
    return seq.index(best), best


# ---- 最大值 ----
def _hole_order(q: TriQuery, hole: int):
    walk = q.table.graph.face_vertices(hole)
    position = {}
    for i, v in enumerate(walk):
        position.setdefault(v, i)
    return position, len(walk)


def _depth_candidates(view: BisectorView, q: TriQuery, site: int, hole_r: int, near: bool) -> List[Tuple]:
    """站点 site 所在各段上到 hole_r 余树深度最小的对偶顶点，返回 [(depth, junction 下标)]"""
    g = q.table.graph
    cot = q.table.site(site).cotree
    depth = cot.hole_depth[g.hole_index[hole_r]]
    L = len(view)
    found = []
    for no, part in enumerate(view.parts):
        if (part.near if near else part.far) != site:
            continue
        for _, a, b, _ in part.runs():
            pos = argmin_holedepth(part.version, site, hole_r, a, b, view.counters)
            face = g.left[part.version.arc(pos, view.counters)]
            k = view.index_of_storage(no, pos)
            # 未翻转时 left(元素) 在第 k 条弧之后，翻转时在之前
            j = k if not part.flipped else (k - 1) % L
            found.append((depth[face], j))
        if not near:
            first = view.offsets[no]
            for j in ((first - 1) % L, (first + part.count - 1) % L):
                found.append((depth[view.junction(j)], j))
    return found


def _switch_candidates(view: BisectorView, q: TriQuery, b: int) -> List[int]:
    """b 不在视图中时，b 在洞上的前驱与后继两段之间的 junction"""
    table = q.table
    hole = table.site(b).hole
    if hole is None:
        return []
    position, H = _hole_order(q, hole)
    fars = [p.far for p in view.parts]
    if any(f not in position for f in fars):
        return []
    m = len(fars)
    L = len(view)
    pb = position[b]

    def between(a: int, c: int) -> bool:
        return 0 < (pb - a) % H < (c - a) % H

    pairs = [(i, (i + 1) % m) for i in range(m) if fars[i] != fars[(i + 1) % m]]
    if not pairs:
        return []
    distinct = [fars[i] for i, _ in pairs]
    if len(set(distinct)) >= 3:
        gaps = sum((position[fars[j]] - position[fars[i]]) % H for i, j in pairs)
        forward = gaps == H
        chosen = [(i, j) for i, j in pairs
                  if (between(position[fars[i]], position[fars[j]]) if forward
                      else between(position[fars[j]], position[fars[i]]))]
    else:
        chosen = [(i, j) for i, j in pairs
                  if between(position[fars[i]], position[fars[j]])
                  or between(position[fars[j]], position[fars[i]])]
    return [(view.offsets[j] - 1) % L for _, j in chosen]


def find_max_edge(q: TriQuery, view: Optional[BisectorView] = None) -> Tuple[int, int]:
    """
    Δ^r 最大的弧

    取 g 与 B 中离 r 最近的站点 c，在 c 一侧的段上找余树 T*_c 中离 r 所在洞最近的对偶顶点，
    答案是与之相邻的两条弧之一；c 不在视图中时改看其洞上前驱与后继两段的交界

    Returns:
        (视图下标, Δ 键)

    Raises:
        EmptyBisector
    """
    view = view if view is not None else primary_view(q)
    L = len(view)
    if L == 0:
        raise EmptyBisector(f"β*({q.g},{q.others}) 在当前权重下为空")
    table = q.table
    hole_r = table.site(q.r).hole
    if hole_r is None:
        _fallback(q, f"站点 {q.r} 不在洞上，Δ 最大值改为线性扫描")
        return _linear_max(view, q)

    c = min((q.g,) + q.others, key=lambda s: table.key(s, q.r, q.weights))
    nears = {p.near for p in view.parts}
    fars = {p.far for p in view.parts}
    if c in nears:
        junctions = [j for _, j in sorted(_depth_candidates(view, q, c, hole_r, True))[:1]]
    elif c in fars:
        junctions = [j for _, j in sorted(_depth_candidates(view, q, c, hole_r, False))[:1]]
    else:
        junctions = _switch_candidates(view, q, c)

    best = None
    for j in junctions:
        for k in (j % L, (j + 1) % L):
            value = delta_at(view, k, q)
            if best is None or value > best[1]:
                best = (k, value)
    if best is None or delta_at(view, best[0] - 1, q) > best[1] or delta_at(view, best[0] + 1, q) > best[1]:
        _fallback(q, f"β*({q.g},{q.others}) 上 r={q.r} 的 Δ 最大值定位失败，改为线性扫描")
        return _linear_max(view, q)
    return best


# ---- 平台区间 ----
def _part_interval(view: BisectorView, k: int, q: TriQuery) -> Tuple[int, int, int]:
    """
    第 k 条弧所在段内的 GetInterval：
    紧端点 v（Δ 值取到最大的那一端，站点 c），T_c 中最靠近根且 δ̃^{rc} 相同的祖先 u，
    返回前序标号落在 (pre_c(pu), pre_c(up)) 内的弧在本段中的部分

    Returns:
        (lo, hi, value)，lo..hi 为视图下标（不回绕，落在本段内）
    """
    no = view.part_index(k)
    part = view.parts[no]
    i = k - view.offsets[no]
    e = part.arc(i, view.counters)
    g = part.family.graph
    x, y = g.tail[e], g.head[e]
    kx, ky = endpoint_key(q, part.near, x), endpoint_key(q, part.far, y)
    value = max(kx, ky)
    v, c = (x, part.near) if kx >= ky else (y, part.far)

    data = q.table.site(c)
    tree = data.tree
    u = level_ancestor_search(tree, v, lambda w: endpoint_key(q, c, w) == value)
    first, last = view.offsets[no], view.offsets[no] + part.count - 1
    if u is None or tree.parent_arc[u] < 0:
        return first, last, value
    pu = tree.parent_arc[u]
    a, b = data.pre[pu], data.pre[g.rev[pu]]
    version = part.version
    L = version.length
    r0 = pre_rank(version, c, a + 1, view.counters)
    r1 = pre_rank(version, c, b, view.counters)
    n = r1 - r0
    if n <= 0:
        return k, k, value
    t1 = version.tour(pre_select(version, c, r0, view.counters))
    t2 = version.tour(pre_select(version, c, r1 - 1, view.counters))
    ta, tb = (t1, t2) if (t2 - t1) % L + 1 == n else (t2, t1)

    # 与本段的游走区间求交，保留包含 k 的那一块
    tk = part.tour_index(i)
    off_k = (tk - ta) % L
    lo_off = -min(off_k, (tk - part.start) % L)
    hi_off = min(n - 1 - off_k, (part.start + part.count - 1 - tk) % L)
    if part.flipped:
        return k - hi_off, k - lo_off, value
    return k + lo_off, k + hi_off, value


def get_interval(view: BisectorView, pos: int, q: TriQuery) -> Tuple[int, int]:
    """
    包含 pos 的区间 I+：含有所有与 pos 同值的弧，且不含更小的值

    Returns:
        (lo, hi) 视图下标；lo > hi 表示回绕
    """
    L = len(view)
    if not 0 <= pos < L:
        raise NotOnVersion(f"下标 {pos} 不在平分线上")
    lo, hi, value = _part_interval(view, pos, q)
    if hi - lo + 1 >= L:
        return 0, L - 1
    # 跨段：相邻弧同值时接上它所在段的区间
    steps = len(view.parts)
    while steps > 0 and lo % L in view.offsets and hi - lo + 1 < L:
        prev = (lo - 1) % L
        if delta_at(view, prev, q) != value:
            break
        a, _, _ = _part_interval(view, prev, q)
        lo = lo - ((prev - a) % L + 1)
        steps -= 1
    steps = len(view.parts)
    while steps > 0 and (hi + 1) % L in view.offsets and hi - lo + 1 < L:
        nxt = (hi + 1) % L
        if delta_at(view, nxt, q) != value:
            break
        _, b, _ = _part_interval(view, nxt, q)
        hi = hi + ((b - nxt) % L + 1)
        steps -= 1
    if hi - lo + 1 >= L:
        return 0, L - 1
    return lo % L, hi % L


# ---- 双调二分 ----
def _vertex(view: BisectorView, k: int, r: int, owner: int) -> TriVertex:
    face = view.junction(k)
    near, far = view.sites(owner)
    g = view.family_at(k).graph
    return TriVertex(face, (r, near, far), g.is_hole(face))


def _result(view: BisectorView, q: TriQuery, first: int, last: int) -> TriResult:
    """死亡段 [first, last]（循环）两端的顶点"""
    L = len(view)
    prv, nxt = (first - 1) % L, (last + 1) % L
    vertices = [_vertex(view, prv, q.r, prv)]
    closing = _vertex(view, last, q.r, nxt)
    if closing.face != vertices[0].face:
        vertices.append(closing)
    return TriResult(vertices=vertices, dying=(first, last))


def _first_true(lo: int, hi: int, pred) -> int:
    """[lo, hi) 中单调谓词第一个为真的位置，全假返回 hi"""
    while lo < hi:
        mid = (lo + hi) // 2
        if pred(mid):
            hi = mid
        else:
            lo = mid + 1
    return lo


def _single_hole(view: BisectorView, q: TriQuery) -> Optional[TriResult]:
    """r、g、b 同洞时从洞之后起 Δ 弱单调，一次二分即可；条件不满足返回 None"""
    if len(view.parts) != 1 or view.parts[0].count != view.parts[0].version.length:
        return None
    part = view.parts[0]
    table = q.table
    hole = table.site(q.r).hole
    if hole is None or table.site(part.near).hole != hole or table.site(part.far).hole != hole:
        return None
    at = view.face_positions(hole)
    if not at:
        return None
    L = len(view)
    j = at[0]
    rho = lambda i: delta_at(view, j + 1 + i, q)
    thr = SITE_SCALE * q.weights[q.r]
    head, tail = rho(0), rho(L - 1)
    if L >= 2 and (head >= tail and rho(1) > head or head < tail and rho(L - 2) > tail):
        return None
    if head >= tail:
        a = _first_true(0, L, lambda i: rho(i) < thr)
        if a == 0:
            return TriResult(full_bisector_survives=True)
        if a == L:
            return TriResult(swallowed=True, dying=(0, L - 1))
        return _result(view, q, (j + 1) % L, (j + a) % L)
    b = _first_true(0, L, lambda i: rho(i) > thr)
    if b == L:
        return TriResult(full_bisector_survives=True)
    if b == 0:
        return TriResult(swallowed=True, dying=(0, L - 1))
    return _result(view, q, (j + 1 + b) % L, j % L)


def _on_view(view: BisectorView, q: TriQuery) -> TriResult:
    L = len(view)
    if L == 0:
        return TriResult(empty_bisector=True)
    fast = _single_hole(view, q)
    if fast is not None:
        return fast
    pmax, best = find_max_edge(q, view)
    thr = SITE_SCALE * q.weights[q.r]
    if best < thr:
        return TriResult(full_bisector_survives=True)
    tau = lambda i: delta_at(view, pmax + i, q)

    # 第一阶段：[0, lo] 与 [hi, L) 都已知死亡，幸存者只可能在 (lo, hi) 内
    lo, hi = 0, L
    survivor = None
    while hi - lo > 1:
        mid = (lo + hi) // 2
        x = tau(mid)
        if x < thr:
            survivor = mid
            break
        nx = tau(mid + 1)
        if x > nx:
            lo = mid
        elif x < nx:
            hi = mid
        else:
            s, t = get_interval(view, (pmax + mid) % L, q)
            s, t = (s - pmax) % L, (t - pmax) % L
            if (t - s) % L + 1 >= L:
                break
            if s > t or s == 0:
                lo = max(lo, t)
                if s > t:
                    hi = min(hi, s)
            elif t + 1 <= L and tau(t + 1) < x:
                lo = max(lo, t)
            elif tau(s - 1) < x:
                hi = min(hi, s)
            else:
                break
    if survivor is None:
        return TriResult(swallowed=True, dying=(0, L - 1))

    # 第二阶段：两次普通二分
    a = _first_true(lo + 1, survivor + 1, lambda i: tau(i) < thr)
    b = _first_true(survivor, hi, lambda i: tau(i) > thr) - 1
    return _result(view, q, (pmax + b + 1) % L, (pmax + a - 1) % L)


def tri_vertices(q: TriQuery) -> TriResult:
    """{r, g, b} 的（至多两个）三色顶点"""
    if q.counters is not None:
        q.counters.tri_calls += 1
    result = _on_view(primary_view(q), q)
    alive = set(q.table.alive(q.weights, list(q.sites)))
    result.dominated = tuple(s for s in q.sites if s not in alive)
    logger.debug(f"tri({q.r},{q.g},{q.others[0]}): {result.faces}")
    return result


def tri_vertices_ext(q: TriQuery) -> TriResult:
    """r 与 g、B 的三色顶点；B 视为一个整体，视图为 g 的单元在 VD({g} ∪ B) 中的边界环"""
    if not q.views:
        raise BadParams("扩展查询需要 β*(g,B) 的视图")
    if q.counters is not None:
        q.counters.tri_calls += 1
    parts = [_on_view(view, q) for view in q.views]
    result = TriResult(
        vertices=[v for p in parts for v in p.vertices],
        full_bisector_survives=all(p.full_bisector_survives or p.empty_bisector for p in parts),
        swallowed=all(p.swallowed for p in parts),
        empty_bisector=all(p.empty_bisector for p in parts),
    )
    if len(parts) == 1:
        result.dying = parts[0].dying
    logger.debug(f"tri_ext({q.r},{q.g},{len(q.others)} 个 B): {result.faces}")
    return result
