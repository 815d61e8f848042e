"""
几何模块

三角形值类型、分类，以及 τ、σ、拉伸、对分拉伸等变换。
"""

from .triangle import (
    ANGLE_TOL,
    IsoscelesSpec,
    Shape,
    Triangle,
    TriangleClass,
    TriangleScalars,
    as_triangle,
    classify,
    derived_scalars,
    isosceles_spec_of,
    unit_equilateral,
)
from .maps import (
    LinearMap,
    SigmaMap,
    bisect_stretch_step,
    sigma_map,
    stretch_factor,
    stretch_to_isosceles,
    tau_image,
    tau_map,
)

__all__ = [
    "ANGLE_TOL",
    "IsoscelesSpec",
    "Shape",
    "Triangle",
    "TriangleClass",
    "TriangleScalars",
    "as_triangle",
    "classify",
    "derived_scalars",
    "isosceles_spec_of",
    "unit_equilateral",
    "LinearMap",
    "SigmaMap",
    "bisect_stretch_step",
    "sigma_map",
    "stretch_factor",
    "stretch_to_isosceles",
    "tau_image",
    "tau_map",
]
