"""平面图核心层"""
from .graph import EmbeddedGraph, build_graph, graph_from_edges, mark_holes, pack, base_of, SHIFT
from .dual import DualGraph, compute_dual
from .triangulate import triangulate, is_triangulated, inf_length
from .trees import ShortestPathTree, preorder_arc_labels, LevelAncestor, level_ancestor_search
from .rmq import RangeMax, rmq_build, rmq_query
from .cotree import Cotree, cotree, NO_LABEL

__all__ = [
    'EmbeddedGraph', 'build_graph', 'graph_from_edges', 'mark_holes', 'pack', 'base_of', 'SHIFT',
    'DualGraph', 'compute_dual',
    'triangulate', 'is_triangulated', 'inf_length',
    'ShortestPathTree', 'preorder_arc_labels', 'LevelAncestor', 'level_ancestor_search',
    'RangeMax', 'rmq_build', 'rmq_query',
    'Cotree', 'cotree', 'NO_LABEL',
]
