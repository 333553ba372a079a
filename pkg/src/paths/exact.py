"""
精确长度：base 与 128 位扰动字打包成一个整数 base << 256 | tiebreak
加法逐分量、比较按字典序，都直接用整数运算完成
"""
import random
from typing import Optional

from ..core.graph import EmbeddedGraph, pack, base_of, SHIFT

TIEBREAK_BITS = 128


def perturb(g: EmbeddedGraph, seed: int) -> EmbeddedGraph:
    """
    为每条弧抽取固定种子的 128 位扰动字

    Args:
        g: 整数长度的图
        seed: 随机种子

    Returns:
        同拓扑、带扰动的新图
    """
    rng = random.Random(seed)
    words = [rng.getrandbits(TIEBREAK_BITS) for _ in range(g.m)]
    return g.with_lengths(g.base, words)


def exact(base: int, tiebreak: int = 0) -> int:
    return pack(base, tiebreak)


def tiebreak_of(x: int) -> int:
    return x - (base_of(x) << SHIFT)


def format_length(x) -> str:
    if x == float('inf'):
        return '∞'
    return str(base_of(x))


def to_base(x) -> Optional[int]:
    """无穷返回 None"""
    if x == float('inf') or x == float('-inf'):
        return None
    return base_of(x)
