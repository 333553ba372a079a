"""最短路层"""
from .exact import perturb, exact, tiebreak_of, format_length, to_base, TIEBREAK_BITS
from .dijkstra import dijkstra
from .heap import QuadHeap
from .price import price_function, reduce_lengths
from .boundary import DistanceTable, boundary_distances

__all__ = [
    'perturb', 'exact', 'tiebreak_of', 'format_length', 'to_base', 'TIEBREAK_BITS',
    'dijkstra', 'QuadHeap', 'price_function', 'reduce_lengths',
    'DistanceTable', 'boundary_distances',
]
