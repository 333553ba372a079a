"""项目初始化"""
__version__ = '0.1.0'
