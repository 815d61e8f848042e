"""
闭式模态模块

闭式的精确本征函数、特征值和积分，作为有限元的对照和移植用的试探函数。
"""

from .frames import EQUILATERAL_TO_CANONICAL, IDENTITY, RigidMotion
from .modes import (
    EQUILATERAL_EIGENVALUE,
    RIGHT_ISOSCELES_EIGENVALUE,
    SECTOR_MODE_LIMIT,
    ClosedFormMode,
    EquilateralIntegrals,
    ModeDomain,
    ModeLabel,
    SectorRegion,
    cheng_rayleigh_on_triangle,
    cheng_trial_function,
    equilateral_integrals,
    equilateral_integrals_by_quadrature,
    equilateral_modes,
    interval_neumann_tone,
    right_isosceles_symmetric_mode,
    sector_angular_tone,
    sector_dirichlet_arc_mode,
    sector_dirichlet_arc_tone,
    sector_fundamental_class,
    sector_neumann_mode,
    stretched_quotient,
    transplanted_sector_function,
)
from .quadrature import (
    collapsed_triangle_rule,
    integrate_over_sector,
    integrate_over_triangle,
    integrate_with_estimate,
)

__all__ = [
    "EQUILATERAL_TO_CANONICAL",
    "IDENTITY",
    "RigidMotion",
    "EQUILATERAL_EIGENVALUE",
    "RIGHT_ISOSCELES_EIGENVALUE",
    "SECTOR_MODE_LIMIT",
    "ClosedFormMode",
    "EquilateralIntegrals",
    "ModeDomain",
    "ModeLabel",
    "SectorRegion",
    "cheng_rayleigh_on_triangle",
    "cheng_trial_function",
    "equilateral_integrals",
    "equilateral_integrals_by_quadrature",
    "equilateral_modes",
    "interval_neumann_tone",
    "right_isosceles_symmetric_mode",
    "sector_angular_tone",
    "sector_dirichlet_arc_mode",
    "sector_dirichlet_arc_tone",
    "sector_fundamental_class",
    "sector_neumann_mode",
    "stretched_quotient",
    "transplanted_sector_function",
    "collapsed_triangle_rule",
    "integrate_over_sector",
    "integrate_over_triangle",
    "integrate_with_estimate",
]
