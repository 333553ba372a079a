"""
平分线视图：把一个或多个版本片段按游走顺序拼成一个循环序列
视图中的弧总是从近侧站点指向远侧站点，相邻两条弧的公共面为 left(前一条)
探查次数按持久化树中访问的节点数累计
"""
from bisect import bisect_right
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from ..bisectors import persistent
from ..bisectors.family import BisectorFamily, Version
from ..errors import IndexOutOfRange
from ..settings import Counters

# 谓词工厂：family -> (may(hi, lo), test(dec))
Predicate = Callable[[BisectorFamily], Tuple[Callable, Callable]]


@dataclass(frozen=True)
class Part:
    """
    版本上的一段

    start/count 以 u 侧游走序的下标计（可跨越末尾回绕）；
    flipped 表示近侧站点是 family.v，此时逆序遍历且弧取反向
    """
    version: Version
    start: int
    count: int
    flipped: bool = False

    @property
    def family(self) -> BisectorFamily:
        return self.version.family

    @property
    def near(self) -> int:
        return self.family.v if self.flipped else self.family.u

    @property
    def far(self) -> int:
        return self.family.u if self.flipped else self.family.v

    def tour_index(self, k: int) -> int:
        L = self.version.length
        if self.flipped:
            return (self.start + self.count - 1 - k) % L
        return (self.start + k) % L

    def storage(self, k: int) -> int:
        return self.version.tour(self.tour_index(k))

    def view_index(self, pos: int) -> Optional[int]:
        """storage 的逆：存储位置在本段中的下标，不在段内返回 None"""
        L = self.version.length
        off = (self.version.tour(pos) - self.start) % L
        if off >= self.count:
            return None
        return self.count - 1 - off if self.flipped else off

    def slice(self, i0: int, i1: int) -> 'Part':
        """本段视图下标 [i0, i1] 构成的子段"""
        L = self.version.length
        count = i1 - i0 + 1
        if self.flipped:
            return Part(self.version, (self.start + self.count - 1 - i1) % L, count, True)
        return Part(self.version, (self.start + i0) % L, count, False)

    def runs(self) -> List[Tuple[int, int, int, bool]]:
        """按视图顺序给出 (起始偏移, lo, hi, 存储是否升序)"""
        if self.count == 0:
            return []
        L = self.version.length
        p0 = self.storage(0)
        ascending = self.flipped != self.family.tour_ascending
        if ascending:
            first = min(self.count, L - p0)
            runs = [(0, p0, p0 + first - 1, True)]
            if first < self.count:
                runs.append((first, 0, self.count - first - 1, True))
        else:
            first = min(self.count, p0 + 1)
            runs = [(0, p0 - first + 1, p0, False)]
            if first < self.count:
                runs.append((first, L - (self.count - first), L - 1, False))
        return runs

    def arc(self, k: int, counters: Optional[Counters] = None) -> int:
        e = self.version.arc(self.storage(k), counters)
        return self.family.graph.rev[e] if self.flipped else e

    def dec(self, k: int, counters: Optional[Counters] = None) -> tuple:
        return self.version.dec(self.storage(k), counters)

    def side(self) -> Dict[str, int]:
        """近侧站点的装饰分量下标"""
        return self.family.layout.side(not self.flipped)


class BisectorView:
    """若干 Part 首尾相接构成的循环序列"""

    def __init__(self, parts: Sequence[Part], counters: Optional[Counters] = None):
        self.parts = [p for p in parts if p.count > 0]
        self.counters = counters
        self.offsets: List[int] = []
        total = 0
        for p in self.parts:
            self.offsets.append(total)
            total += p.count
        self.length = total

    @classmethod
    def of_version(cls, version: Version, near: int, counters: Optional[Counters] = None) -> 'BisectorView':
        """整个版本，从 near 一侧看"""
        flipped = near == version.family.v
        return cls([Part(version, 0, version.length, flipped)], counters)

    def __len__(self) -> int:
        return self.length

    def part_index(self, k: int) -> int:
        """视图下标 k 所在的段号"""
        if not 0 <= k < self.length:
            raise IndexOutOfRange(f"视图下标 {k} 超出 [0, {self.length})")
        return bisect_right(self.offsets, k) - 1

    def locate(self, k: int) -> Tuple[Part, int]:
        no = self.part_index(k)
        return self.parts[no], k - self.offsets[no]

    def arc(self, k: int) -> int:
        part, i = self.locate(k)
        return part.arc(i, self.counters)

    def dec(self, k: int) -> tuple:
        part, i = self.locate(k)
        return part.dec(i, self.counters)

    def sites(self, k: int) -> Tuple[int, int]:
        """(近侧, 远侧) 站点"""
        part, _ = self.locate(k)
        return part.near, part.far

    def family_at(self, k: int) -> BisectorFamily:
        return self.locate(k)[0].family

    def arcs(self) -> List[int]:
        return [self.arc(k) for k in range(self.length)]

    def junction(self, k: int) -> int:
        """第 k 与第 k+1 条弧之间的对偶顶点（面）"""
        g = self.family_at(k).graph
        return g.left[self.arc(k)]

    def index_of_storage(self, part_no: int, pos: int) -> Optional[int]:
        """第 part_no 段中存储位置 pos 的视图下标"""
        i = self.parts[part_no].view_index(pos)
        return None if i is None else self.offsets[part_no] + i

    def face_positions(self, face: int) -> List[int]:
        """满足 junction(k) = face 的所有视图下标"""
        found = []
        for no, part in enumerate(self.parts):
            version = part.version
            for t in version.junction_tours(face, self.counters):
                # u 侧游走中 left(元素 t) 位于 t 与 t+1 之间
                if part.flipped:
                    i = part.view_index(version.tour((t + 1) % version.length))
                else:
                    i = part.view_index(version.tour(t))
                if i is None:
                    continue
                found.append(self.offsets[no] + i)
        return sorted(set(found))

    def _windows(self, lo: int, hi: int, forward: bool) -> List[tuple]:
        """
        [lo, hi]（视图下标）与各存储区间的交，按搜索方向排列

        Returns:
            [(part, v0, a, b, s0, s1, ascending)]：v0 为存储区间 [a, b] 首元素的视图下标，
            [s0, s1] 为与窗口相交的存储子区间
        """
        pieces = []
        for offset, part in zip(self.offsets, self.parts):
            if offset > hi or offset + part.count - 1 < lo:
                continue
            for start, a, b, ascending in part.runs():
                v0 = offset + start
                v1 = v0 + (b - a)
                w0, w1 = max(v0, lo), min(v1, hi)
                if w0 > w1:
                    continue
                if ascending:
                    s0, s1 = a + (w0 - v0), a + (w1 - v0)
                else:
                    s0, s1 = b - (w1 - v0), b - (w0 - v0)
                pieces.append((part, v0, a, b, s0, s1, ascending))
        return pieces if forward else pieces[::-1]

    @staticmethod
    def _view_index(v0: int, a: int, b: int, pos: int, ascending: bool) -> int:
        return v0 + (pos - a) if ascending else v0 + (b - pos)

    def find(self, lo: int, hi: int, predicate: Predicate, forward: bool = True) -> Optional[int]:
        """[lo, hi] 中第一个（forward=False 时最后一个）满足谓词的视图下标"""
        cache: Dict[int, Tuple[Callable, Callable]] = {}
        for part, v0, a, b, s0, s1, ascending in self._windows(lo, hi, forward):
            fam = part.family
            if id(fam) not in cache:
                cache[id(fam)] = predicate(fam)
            may, test = cache[id(fam)]
            if ascending == forward:
                pos = persistent.find_first(part.version.root, s0, s1, may, test, self.counters)
            else:
                pos = persistent.find_last(part.version.root, s0, s1, may, test, self.counters)
            if pos is not None:
                return self._view_index(v0, a, b, pos, ascending)
        return None

    def windows(self, lo: int, hi: int) -> List[tuple]:
        """[lo, hi] 按存储区间拆开：[(part, v0, a, b, s0, s1, ascending)]"""
        return self._windows(lo, hi, True)

    def max_over(self, lo: int, hi: int, j_of: Callable[[Part], int]):
        """[lo, hi] 内第 j_of(part) 个装饰分量的最大值；空区间返回 None"""
        best = None
        for part, _, _, _, s0, s1, _ in self._windows(lo, hi, True):
            agg = persistent.range_agg(part.version.root, s0, s1, self.counters)
            if agg is None:
                continue
            value = agg[0][j_of(part)]
            if best is None or value > best:
                best = value
        return best

    def collect(self, lo: int, hi: int, j_of: Callable[[Part], int]) -> List[int]:
        """[lo, hi] 内第 j_of(part) 个装饰分量为正的视图下标"""
        found = []
        for part, v0, a, b, s0, s1, ascending in self._windows(lo, hi, True):
            for pos in persistent.range_collect(part.version.root, s0, s1, j_of(part), self.counters):
                found.append(self._view_index(v0, a, b, pos, ascending))
        return sorted(found)

    def __repr__(self):
        return f"<BisectorView parts={len(self.parts)} length={self.length}>"
