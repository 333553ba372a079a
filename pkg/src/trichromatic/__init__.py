"""三色顶点查找"""
from .views import BisectorView, Part
from .search import (
    TriQuery, TriResult, TriVertex, delta_r, primary_view, find_max_edge, get_interval,
    tri_vertices, tri_vertices_ext, endpoint_key, delta_at, delta_sequence,
)

__all__ = [
    'BisectorView', 'Part',
    'TriQuery', 'TriResult', 'TriVertex', 'delta_r', 'primary_view', 'find_max_edge',
    'get_interval', 'tri_vertices', 'tri_vertices_ext', 'endpoint_key', 'delta_at', 'delta_sequence',
]
