"""图文件读写与测试图生成"""
from .graph_parser import load_graph, save_graph, load_arc_table, load_weights
from .generators import grid, random_triangulation, cylinder

__all__ = [
    'load_graph', 'save_graph', 'load_arc_table', 'load_weights',
    'grid', 'random_triangulation', 'cylinder',
]
