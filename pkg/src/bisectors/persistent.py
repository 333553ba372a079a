"""
持久化对数平衡二叉搜索树（路径复制）
每个节点除 key/elem 外带一个装饰元组 dec，子树聚合逐分量的最大值 hi 与最小值 lo；
所有修改返回新根，旧根保持可读；查询可带计数器，按访问的节点数累加 probes
"""
from typing import Callable, Iterator, List, Optional, Sequence, Tuple

from ..errors import IndexOutOfRange


class Node:
    __slots__ = ('key', 'elem', 'dec', 'left', 'right', 'weight', 'hi', 'lo')

    def __init__(self, key, elem, dec: tuple, left: Optional['Node'], right: Optional['Node']):
        self.key = key
        self.elem = elem
        self.dec = dec
        self.left = left
        self.right = right
        self.weight = _node_weight(left) + _node_weight(right) + 1
        hi = lo = dec
        if left is not None:
            hi = tuple(map(max, left.hi, hi))
            lo = tuple(map(min, left.lo, lo))
        if right is not None:
            hi = tuple(map(max, hi, right.hi))
            lo = tuple(map(min, lo, right.lo))
        self.hi = hi
        self.lo = lo

    def __repr__(self):
        return f"<Node key={self.key} elem={self.elem} weight={self.weight}>"


def _node_weight(node: Optional[Node]) -> int:
    return 0 if node is None else node.weight


def _visit(counters, amount: int = 1) -> None:
    if counters is not None:
        counters.probes += amount


def _is_less(a: int, b: int) -> bool:
    return a.bit_length() < b.bit_length()


def _is_too_big(a: int, b: int) -> bool:
    return _is_less(a, b >> 1)


def _node_join(node: Node, left, right) -> Node:
    return Node(node.key, node.elem, node.dec, left, right)


def _node_single_left_rotation(node, left, right):
    return _node_join(right, _node_join(node, left, right.left), right.right)


def _node_double_left_rotation(node, left, right):
    return _node_join(
        right.left,
        _node_join(node, left, right.left.left),
        _node_join(right, right.left.right, right.right),
    )


def _node_single_right_rotation(node, left, right):
    return _node_join(left, left.left, _node_join(node, left.right, right))


def _node_double_right_rotation(node, left, right):
    return _node_join(
        left.right,
        _node_join(left, left.left, left.right.left),
        _node_join(node, left.right.right, right),
    )


def _node_rebalance(node: Node, left, right) -> Node:
    if _is_too_big(_node_weight(left), _node_weight(right)):
        if not _is_less(_node_weight(right.right), _node_weight(right.left)):
            return _node_single_left_rotation(node, left, right)
        return _node_double_left_rotation(node, left, right)

    if _is_too_big(_node_weight(right), _node_weight(left)):
        if not _is_less(_node_weight(left.left), _node_weight(left.right)):
            return _node_single_right_rotation(node, left, right)
        return _node_double_right_rotation(node, left, right)

    return _node_join(node, left, right)


# ---- 修改 ----
def insert(root: Optional[Node], key, elem, dec: tuple) -> Node:
    """插入；key 已存在时替换"""
    if root is None:
        return Node(key, elem, dec, None, None)
    if key < root.key:
        return _node_rebalance(root, insert(root.left, key, elem, dec), root.right)
    if root.key < key:
        return _node_rebalance(root, root.left, insert(root.right, key, elem, dec))
    return Node(key, elem, dec, root.left, root.right)


def _delete_min(node: Node) -> Tuple[Node, Optional[Node]]:
    if node.left is None:
        return node, node.right
    smallest, rest = _delete_min(node.left)
    return smallest, _node_rebalance(node, rest, node.right)


def _glue(left: Optional[Node], right: Optional[Node]) -> Optional[Node]:
    if left is None:
        return right
    if right is None:
        return left
    smallest, rest = _delete_min(right)
    return _node_rebalance(smallest, left, rest)


def delete(root: Optional[Node], key) -> Optional[Node]:
    """删除 key；不存在时原样返回"""
    if root is None:
        return None
    if key < root.key:
        return _node_rebalance(root, delete(root.left, key), root.right)
    if root.key < key:
        return _node_rebalance(root, root.left, delete(root.right, key))
    return _glue(root.left, root.right)


def build(items: Sequence[Tuple]) -> Optional[Node]:
    """由按 key 升序的 (key, elem, dec) 直接构造平衡树"""
    def make(lo: int, hi: int) -> Optional[Node]:
        if lo > hi:
            return None
        mid = (lo + hi) // 2
        key, elem, dec = items[mid]
        return Node(key, elem, dec, make(lo, mid - 1), make(mid + 1, hi))
    return make(0, len(items) - 1)


# ---- 查询 ----
def size(root: Optional[Node]) -> int:
    return _node_weight(root)


def kth(root: Optional[Node], k: int, counters=None) -> Node:
    """中序第 k 个节点（从 0 开始）"""
    if not 0 <= k < _node_weight(root):
        raise IndexOutOfRange(f"下标 {k} 超出范围 [0, {_node_weight(root)})")
    node = root
    while True:
        _visit(counters)
        lw = _node_weight(node.left)
        if k < lw:
            node = node.left
        elif k == lw:
            return node
        else:
            k -= lw + 1
            node = node.right


def rank(root: Optional[Node], key, counters=None) -> int:
    """严格小于 key 的元素个数"""
    count = 0
    node = root
    while node is not None:
        _visit(counters)
        if node.key < key:
            count += _node_weight(node.left) + 1
            node = node.right
        else:
            node = node.left
    return count


def iterate(root: Optional[Node]) -> Iterator[Node]:
    stack: List[Node] = []
    node = root
    while stack or node is not None:
        while node is not None:
            stack.append(node)
            node = node.left
        node = stack.pop()
        yield node
        node = node.right


def find_first(root: Optional[Node], lo: int, hi: int,
               may: Callable[[tuple, tuple], bool], test: Callable[[tuple], bool],
               counters=None) -> Optional[int]:
    """
    [lo, hi] 中第一个满足 test(dec) 的位置

    Args:
        may: may(hi_agg, lo_agg) 为假时整棵子树一定不含满足者
        test: 单个元素的判定
        counters: 可选，累加访问的节点数
    """
    def walk(node: Optional[Node], base: int) -> Optional[int]:
        if node is None or base > hi or base + node.weight - 1 < lo:
            return None
        _visit(counters)
        if not may(node.hi, node.lo):
            return None
        found = walk(node.left, base)
        if found is not None:
            return found
        pos = base + _node_weight(node.left)
        if pos > hi:
            return None
        if pos >= lo and test(node.dec):
            return pos
        return walk(node.right, pos + 1)

    if lo > hi:
        return None
    return walk(root, 0)


def find_last(root: Optional[Node], lo: int, hi: int,
              may: Callable[[tuple, tuple], bool], test: Callable[[tuple], bool],
              counters=None) -> Optional[int]:
    """[lo, hi] 中最后一个满足 test(dec) 的位置"""
    def walk(node: Optional[Node], base: int) -> Optional[int]:
        if node is None or base > hi or base + node.weight - 1 < lo:
            return None
        _visit(counters)
        if not may(node.hi, node.lo):
            return None
        pos = base + _node_weight(node.left)
        found = walk(node.right, pos + 1)
        if found is not None:
            return found
        if pos < lo:
            return None
        if pos <= hi and test(node.dec):
            return pos
        return walk(node.left, base)

    if lo > hi:
        return None
    return walk(root, 0)


def range_agg(root: Optional[Node], lo: int, hi: int, counters=None) -> Optional[Tuple[tuple, tuple]]:
    """[lo, hi] 的 (hi, lo) 聚合；空区间返回 None"""
    parts: List[Tuple[tuple, tuple]] = []

    def walk(node: Optional[Node], base: int) -> None:
        if node is None or base > hi or base + node.weight - 1 < lo:
            return
        _visit(counters)
        if lo <= base and base + node.weight - 1 <= hi:
            parts.append((node.hi, node.lo))
            return
        walk(node.left, base)
        pos = base + _node_weight(node.left)
        if lo <= pos <= hi:
            parts.append((node.dec, node.dec))
        walk(node.right, pos + 1)

    walk(root, 0)
    if not parts:
        return None
    top, bottom = parts[0]
    for h, l in parts[1:]:
        top = tuple(map(max, top, h))
        bottom = tuple(map(min, bottom, l))
    return top, bottom


def range_max(root: Optional[Node], lo: int, hi: int, j: int, counters=None) -> Tuple[int, object]:
    """第 j 个装饰分量在 [lo, hi] 上的 (最左 argmax, max)"""
    agg = range_agg(root, lo, hi, counters)
    if agg is None:
        raise IndexOutOfRange(f"空区间 [{lo}, {hi}]")
    best = agg[0][j]
    pos = find_first(root, lo, hi, lambda h, l: h[j] >= best, lambda d: d[j] == best, counters)
    return pos, best


def range_min(root: Optional[Node], lo: int, hi: int, j: int, counters=None) -> Tuple[int, object]:
    """第 j 个装饰分量在 [lo, hi] 上的 (最左 argmin, min)"""
    agg = range_agg(root, lo, hi, counters)
    if agg is None:
        raise IndexOutOfRange(f"空区间 [{lo}, {hi}]")
    best = agg[1][j]
    pos = find_first(root, lo, hi, lambda h, l: l[j] <= best, lambda d: d[j] == best, counters)
    return pos, best


def range_collect(root: Optional[Node], lo: int, hi: int, j: int, counters=None) -> List[int]:
    """[lo, hi] 中第 j 个装饰分量为正的所有位置"""
    found: List[int] = []

    def walk(node: Optional[Node], base: int) -> None:
        if node is None or base > hi or base + node.weight - 1 < lo or node.hi[j] <= 0:
            return
        _visit(counters)
        walk(node.left, base)
        pos = base + _node_weight(node.left)
        if lo <= pos <= hi and node.dec[j] > 0:
            found.append(pos)
        walk(node.right, pos + 1)

    walk(root, 0)
    return found


def is_balanced(root: Optional[Node]) -> bool:
    if root is None:
        return True
    lw, rw = _node_weight(root.left), _node_weight(root.right)
    return (not _is_too_big(lw, rw) and not _is_too_big(rw, lw)
            and is_balanced(root.left) and is_balanced(root.right))
