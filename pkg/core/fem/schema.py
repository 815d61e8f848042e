"""
有限元结果数据结构

- SymmetryTag: 模态相对对称轴的分类
- EigenSolution: 特征值 + 节点系数 + 对称性 + 离散化信息
- ExtrapolatedTone: Richardson 外推后的基频

两者都可以 to_dict / to_json，EigenSolution 的系数默认不写入 JSON。
"""

import json
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional

import numpy as np

from core.fem.mesh import Mesh


class SymmetryTag(str, Enum):
    """对称性标签"""
    SYMMETRIC = "symmetric"
    ANTISYMMETRIC = "antisymmetric"
    NONE = "none"
    NOT_APPLICABLE = "not_applicable"


class SymmetryClass(str, Enum):
    """对称约化求解的类别"""
    SYMMETRIC = "symmetric"
    ANTISYMMETRIC = "antisymmetric"


@dataclass
class EigenSolution:
    """一个离散特征对"""
    eigenvalue: float
    coefficients: np.ndarray
    mesh_level: int
    symmetry: SymmetryTag = SymmetryTag.NOT_APPLICABLE
    residual: float = 0.0
    backend: str = ""
    mesh: Optional[Mesh] = field(default=None, repr=False)

    def to_dict(self, include_coefficients: bool = False) -> Dict[str, Any]:
        data = {
            "eigenvalue": self.eigenvalue,
            "mesh_level": self.mesh_level,
            "symmetry": self.symmetry.value,
            "residual": self.residual,
            "backend": self.backend,
            "unknowns": int(self.coefficients.size),
        }
        if include_coefficients:
            data["coefficients"] = self.coefficients.tolist()
        return data

    def to_json(self, include_coefficients: bool = False) -> str:
        return json.dumps(self.to_dict(include_coefficients), ensure_ascii=False)


@dataclass
class ExtrapolatedTone:
    """
    Richardson 外推结果

    fallback 非空时表示孔径低于有限元下限，value 取闭式夹逼区间的中点，
    error_estimate 取半宽。
    """
    value: float
    error_estimate: float
    levels_used: List[int]
    observed_order: float
    raw_values: List[float] = field(default_factory=list)
    order_flagged: bool = False
    symmetry_class: Optional[str] = None
    fallback: Optional[Dict[str, float]] = None

    def scaled(self, factor: float) -> "ExtrapolatedTone":
        """乘以 factor（例如 D²）得到无量纲值"""
        return ExtrapolatedTone(
            value=self.value * factor,
            error_estimate=self.error_estimate * factor,
            levels_used=list(self.levels_used),
            observed_order=self.observed_order,
            raw_values=[v * factor for v in self.raw_values],
            order_flagged=self.order_flagged,
            symmetry_class=self.symmetry_class,
            fallback=None if self.fallback is None else {k: v * factor for k, v in self.fallback.items()},
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "value": self.value,
            "error_estimate": self.error_estimate,
            "levels_used": list(self.levels_used),
            "observed_order": None if math.isnan(self.observed_order) else self.observed_order,
            "raw_values": list(self.raw_values),
            "order_flagged": self.order_flagged,
            "symmetry_class": self.symmetry_class,
            "fallback": self.fallback,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "ExtrapolatedTone":
        order = data.get("observed_order")
        return cls(
            value=float(data["value"]),
            error_estimate=float(data["error_estimate"]),
            levels_used=[int(n) for n in data.get("levels_used", [])],
            observed_order=float("nan") if order is None else float(order),
            raw_values=[float(v) for v in data.get("raw_values", [])],
            order_flagged=bool(data.get("order_flagged", False)),
            symmetry_class=data.get("symmetry_class"),
            fallback=data.get("fallback"),
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False)
