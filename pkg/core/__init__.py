"""
tritone 核心系统
三角形 Neumann 基频的计算、闭式模态、特征值界与审计
"""

__version__ = "0.1.0"
