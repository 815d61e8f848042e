"""
特征值界模块

闭式上下界、移植比较、不等式链审计和对分拉伸链。
"""

from .audit import audit, audit_batch, random_triangle, stress_set
from .chain import ChainResult, ChainStep, bisect_stretch_chain, chain_apertures
from .formulas import (
    antisym_interval_lower,
    boundsiso_sandwich,
    cheng_antisymmetry_threshold,
    cheng_implies_antisymmetric,
    cheng_upper,
    convex_perimeter_lower,
    g_equilateral,
    g_right_isosceles,
    perimeter_lower,
    prop1d_bounds,
    pw_diameter_lower,
    sum_of_squares_upper,
    symmetric_half_lower,
    symmetric_rewrite_lower,
    thm_diameter_lower,
    transplant_factor,
    transplant_threshold,
)
from .schema import BoundEntry, BoundKind, BoundReport, BoundStatus, TransplantVerdict
from .transplant import (
    antisymmetric_case_split,
    corcomp_check,
    gradient_split,
    lemcomp_check,
    symmetric_case_split,
    transplanted_sector_quotient,
)

__all__ = [
    "audit",
    "audit_batch",
    "random_triangle",
    "stress_set",
    "ChainResult",
    "ChainStep",
    "bisect_stretch_chain",
    "chain_apertures",
    "antisym_interval_lower",
    "boundsiso_sandwich",
    "cheng_antisymmetry_threshold",
    "cheng_implies_antisymmetric",
    "cheng_upper",
    "convex_perimeter_lower",
    "g_equilateral",
    "g_right_isosceles",
    "perimeter_lower",
    "prop1d_bounds",
    "pw_diameter_lower",
    "sum_of_squares_upper",
    "symmetric_half_lower",
    "symmetric_rewrite_lower",
    "thm_diameter_lower",
    "transplant_factor",
    "transplant_threshold",
    "BoundEntry",
    "BoundKind",
    "BoundReport",
    "BoundStatus",
    "TransplantVerdict",
    "antisymmetric_case_split",
    "corcomp_check",
    "gradient_split",
    "lemcomp_check",
    "symmetric_case_split",
    "transplanted_sector_quotient",
]
