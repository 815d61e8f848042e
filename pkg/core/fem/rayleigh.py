"""
离散 Rayleigh 商

任意节点值（或点函数在顶点处的插值）先去掉 M 加权平均，再取 uᵀKu / uᵀMu。
同一个模块提供由单元梯度计算的 κ = ∫w_y² / ∫|∇w|²。
"""

import logging
from typing import Callable, Optional, Union

import numpy as np

from core.errors import DomainError
from core.fem.assembly import FemMatrices, assemble, gradient_integrals
from core.fem.mesh import Mesh

logger = logging.getLogger(__name__)

NodalOrFunction = Union[np.ndarray, Callable[[np.ndarray], np.ndarray]]


def nodal_values(mesh: Mesh, values: NodalOrFunction) -> np.ndarray:
    """点函数在顶点处求值；数组原样返回"""
    if callable(values):
        return np.asarray(values(mesh.vertices), dtype=float)
    u = np.asarray(values, dtype=float)
    if u.shape != (mesh.vertex_count,):
        raise DomainError(f"节点值个数 {u.shape} 与顶点数 {mesh.vertex_count} 不符")
    return u


def rayleigh_quotient_of(mesh: Mesh, values: NodalOrFunction,
                         matrices: Optional[FemMatrices] = None) -> float:
    """
    分片线性函数的 Rayleigh 商

    Args:
        mesh: 网格
        values: 节点值或点函数
        matrices: 可选的已组装矩阵

    Returns:
        float: 去均值后的 uᵀKu / uᵀMu

    Raises:
        DomainError: 输入为常数
    """
    matrices = matrices or assemble(mesh)
    u = nodal_values(mesh, values)
    ones = np.ones_like(u)
    m_ones = matrices.mass @ ones
    u0 = u - (m_ones @ u) / (m_ones @ ones)

    norm2 = float(u0 @ (matrices.mass @ u0))
    energy = float(u0 @ (matrices.stiffness @ u0))
    scale = float(u @ (matrices.mass @ u))
    if norm2 <= 1e-28 * max(scale, 1e-300) or energy <= 0.0:
        raise DomainError("常数函数没有 Rayleigh 商")
    return energy / norm2


def kappa(mesh: Mesh, values: NodalOrFunction) -> float:
    """κ = ∫w_y² / ∫(w_x² + w_y²)，由单元常数梯度按面积加权"""
    u = nodal_values(mesh, values)
    wx2, wy2 = gradient_integrals(mesh, u)
    total = wx2 + wy2
    if total <= 0.0:
        raise DomainError("常数函数的 κ 无定义")
    return wy2 / total
