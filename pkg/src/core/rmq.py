"""稀疏表区间最大值"""
from typing import List, Sequence, Tuple

from ..errors import EmptyRange


class RangeMax:
    """O(n log n) 构建，O(1) 查询 (argmax, max)；并列取最左"""

    def __init__(self, values: Sequence):
        self.values = list(values)
        n = len(self.values)
        self.table: List[List[int]] = [list(range(n))]
        span = 1
        while 2 * span <= n:
            prev = self.table[-1]
            row = []
            for i in range(n - 2 * span + 1):
                a, b = prev[i], prev[i + span]
                row.append(b if self.values[b] > self.values[a] else a)
            self.table.append(row)
            span *= 2

    def __len__(self):
        return len(self.values)

    def query(self, lo: int, hi: int) -> Tuple[int, object]:
        """闭区间 [lo, hi]"""
        if lo > hi or lo < 0 or hi >= len(self.values):
            raise EmptyRange(f"非法区间 [{lo}, {hi}]")
        k = (hi - lo + 1).bit_length() - 1
        a = self.table[k][lo]
        b = self.table[k][hi - (1 << k) + 1]
        i = b if self.values[b] > self.values[a] else a
        return i, self.values[i]


def rmq_build(values: Sequence) -> RangeMax:
    return RangeMax(values)


def rmq_query(rmq: RangeMax, lo: int, hi: int) -> Tuple[int, object]:
    return rmq.query(lo, hi)
