"""单元内最远点查询"""
from .farthest import (
    MaxIndex, FarthestResult, SkeletonIncidence, preprocess_max, farthest_in_cell, farthest_all,
    penetration_audit, skeleton_incidences,
)

__all__ = [
    'MaxIndex', 'FarthestResult', 'SkeletonIncidence', 'preprocess_max', 'farthest_in_cell',
    'farthest_all', 'penetration_audit', 'skeleton_incidences',
]
