"""
Bessel 函数模块

提供第一类 Bessel 函数求值和各类正根，是所有闭式模态和界公式的数值后端。
"""

from .bessel import (
    J01,
    J11,
    BesselRoot,
    RootKind,
    bessel_j,
    bessel_j_derivative,
    bessel_j_zero,
    bessel_jprime_zero,
    describe_root,
    jprime_crossing,
)

__all__ = [
    "J01",
    "J11",
    "BesselRoot",
    "RootKind",
    "bessel_j",
    "bessel_j_derivative",
    "bessel_j_zero",
    "bessel_jprime_zero",
    "describe_root",
    "jprime_crossing",
]
