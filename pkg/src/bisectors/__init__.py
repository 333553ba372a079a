"""平分线层：δ 表、持久化序列与平分线族"""
from .delta import DeltaTable, SiteData, precompute_delta, hole_of_site, SITE_SCALE
from .family import (
    BisectorFamily, FamilyStore, Layout, Version, build_family, version_at, kth_arc,
    search_by_pre, range_max, argmin_holedepth, hole_incidences, hole_positions,
    pre_rank, pre_select,
)

__all__ = [
    'DeltaTable', 'SiteData', 'precompute_delta', 'hole_of_site', 'SITE_SCALE',
    'BisectorFamily', 'FamilyStore', 'Layout', 'Version', 'build_family', 'version_at', 'kth_arc',
    'search_by_pre', 'range_max', 'argmin_holedepth', 'hole_incidences', 'hole_positions',
    'pre_rank', 'pre_select',
]
