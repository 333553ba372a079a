"""
4 叉最小堆：Dijkstra 的优先队列
元素为可比较的元组；不支持 decrease-key，过期元素由调用方在弹出时跳过
"""
from typing import Iterable, List, Tuple

ARITY = 4


class QuadHeap:
    def __init__(self, items: Iterable[Tuple] = ()):
        self.items: List[Tuple] = list(items)
        for i in range((len(self.items) - 2) // ARITY, -1, -1):
            self._sift_down(i)

    def __len__(self) -> int:
        return len(self.items)

    def __bool__(self) -> bool:
        return bool(self.items)

    def push(self, item: Tuple) -> None:
        self.items.append(item)
        self._sift_up(len(self.items) - 1)

    def peek(self) -> Tuple:
        return self.items[0]

    def pop(self) -> Tuple:
        items = self.items
        last = items.pop()
        if not items:
            return last
        top = items[0]
        items[0] = last
        self._sift_down(0)
        return top

    def _sift_up(self, i: int) -> None:
        items = self.items
        item = items[i]
        while i > 0:
            parent = (i - 1) // ARITY
            if not item < items[parent]:
                break
            items[i] = items[parent]
            i = parent
        items[i] = item

    def _sift_down(self, i: int) -> None:
        items = self.items
        n = len(items)
        item = items[i]
        while True:
            first = ARITY * i + 1
            if first >= n:
                break
            best = first
            for c in range(first + 1, min(first + ARITY, n)):
                if items[c] < items[best]:
                    best = c
            if not items[best] < item:
                break
            items[i] = items[best]
            i = best
        items[i] = item
