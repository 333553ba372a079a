"""直径计算流程"""
from .pipeline import DiameterResult, diameter, case_iii_scan, default_r, prepare

__all__ = ['DiameterResult', 'diameter', 'case_iii_scan', 'default_r', 'prepare']
