"""加权 Voronoi 图的构造"""
from .preprocess import PieceIndex, preprocess_piece
from .diagram import Segment, VoronoiDiagram, cyclic_runs, intersect_cyclic
from .dcel import DCEL, HalfEdge, build_dcel
from .holes import HoleOwners, corner_indices
from .merge import Merger, brute_merge, keep_pieces, merge_diagrams
from .construct import (
    construct_vd, vd_single_hole, vd_two_holes, vd_three_holes, assemble_multi, cell_boundary,
    expected_cover, trichromatic_vertices,
)

__all__ = [
    'PieceIndex', 'preprocess_piece',
    'Segment', 'VoronoiDiagram', 'cyclic_runs', 'intersect_cyclic',
    'DCEL', 'HalfEdge', 'build_dcel',
    'HoleOwners', 'corner_indices',
    'Merger', 'brute_merge', 'keep_pieces', 'merge_diagrams',
    'construct_vd', 'vd_single_hole', 'vd_two_holes', 'vd_three_holes', 'assemble_multi',
    'cell_boundary', 'expected_cover', 'trichromatic_vertices',
]
