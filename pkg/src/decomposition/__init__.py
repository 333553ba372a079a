"""分解层：分隔器与 r-division"""
from .separator import separator, adjacency_of, components
from .rdivision import Piece, RDivision, build_piece, r_division, MIN_R

__all__ = [
    'separator', 'adjacency_of', 'components',
    'Piece', 'RDivision', 'build_piece', 'r_division', 'MIN_R',
]
