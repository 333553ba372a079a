"""暴力参照实现与对照检查"""
from .brute import apsp_oracle, vd_oracle, bisector_oracle, tri_oracle, farthest_oracle, survivors_oracle, ORACLE_LIMIT
from .audit import (
    AuditReport, Instance, KINDS, check_bisectors, check_diameter, check_farthest, check_tri, check_vd,
    generate, random_instances, run_audit,
)

__all__ = [
    'apsp_oracle', 'vd_oracle', 'bisector_oracle', 'tri_oracle', 'farthest_oracle', 'survivors_oracle', 'ORACLE_LIMIT',
    'AuditReport', 'Instance', 'KINDS', 'check_bisectors', 'check_diameter', 'check_farthest',
    'check_tri', 'check_vd', 'generate', 'random_instances', 'run_audit',
]
