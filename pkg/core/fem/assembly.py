"""
分片线性有限元组装

刚度矩阵 K_ij = ∫∇φi·∇φj，质量矩阵 M_ij = ∫φi φj（一致质量：对角 A/6，非对角 A/12）。
uᵀKu / uᵀMu 就是分片线性插值函数的 Rayleigh 商。
"""

import logging
from dataclasses import dataclass
from typing import Tuple

import numpy as np
from scipy import sparse

from core.fem.mesh import Mesh

logger = logging.getLogger(__name__)


@dataclass
class FemMatrices:
    """组装结果"""
    stiffness: sparse.csc_matrix
    mass: sparse.csc_matrix

    @property
    def size(self) -> int:
        return int(self.stiffness.shape[0])

    def restrict(self, keep: np.ndarray) -> "FemMatrices":
        """保留 keep 中的自由度（其余自由度取零，即本质边界条件）"""
        return FemMatrices(
            stiffness=self.stiffness[keep][:, keep].tocsc(),
            mass=self.mass[keep][:, keep].tocsc(),
        )


def element_geometry(mesh: Mesh) -> Tuple[np.ndarray, np.ndarray]:
    """
    每个单元的面积和三个重心坐标基函数的梯度

    Returns:
        (areas, grads): areas 形状 (M,)，grads 形状 (M, 3, 2)
    """
    v = mesh.vertices[mesh.elements]
    x, y = v[..., 0], v[..., 1]
    two_area = (x[:, 1] - x[:, 0]) * (y[:, 2] - y[:, 0]) - (x[:, 2] - x[:, 0]) * (y[:, 1] - y[:, 0])
    grads = np.empty(v.shape)
    # ∇φ1 = (y2 - y3, x3 - x2) / 2A，其余轮换
    for a in range(3):
        b, c = (a + 1) % 3, (a + 2) % 3
        grads[:, a, 0] = (y[:, b] - y[:, c]) / two_area
        grads[:, a, 1] = (x[:, c] - x[:, b]) / two_area
    return 0.5 * two_area, grads


def assemble(mesh: Mesh) -> FemMatrices:
    """
    组装刚度矩阵和质量矩阵

    Args:
        mesh: 网格

    Returns:
        FemMatrices: 对称半正定的 K（核为常数）与对称正定的 M
    """
    areas, grads = element_geometry(mesh)
    t = mesh.elements
    local_k = areas[:, None, None] * np.einsum("mik,mjk->mij", grads, grads)
    local_m = (areas / 12.0)[:, None, None] * (np.ones((3, 3)) + np.eye(3))[None]

    i = np.repeat(t, 3, axis=1).reshape(-1)
    j = np.tile(t, (1, 3)).reshape(-1)
    n = mesh.vertex_count
    stiffness = sparse.csc_matrix((local_k.reshape(-1), (i, j)), shape=(n, n))
    mass = sparse.csc_matrix((local_m.reshape(-1), (i, j)), shape=(n, n))
    logger.debug(f"组装完成: {n} 个顶点, {mesh.element_count} 个单元")
    return FemMatrices(stiffness=stiffness, mass=mass)


def element_gradients(mesh: Mesh, values: np.ndarray) -> np.ndarray:
    """分片线性函数在每个单元上的（常数）梯度，形状 (M, 2)"""
    _, grads = element_geometry(mesh)
    return np.einsum("mik,mi->mk", grads, np.asarray(values, dtype=float)[mesh.elements])


def gradient_integrals(mesh: Mesh, values: np.ndarray) -> Tuple[float, float]:
    """(∫u_x², ∫u_y²)，由单元梯度按面积加权求和"""
    areas, _ = element_geometry(mesh)
    g = element_gradients(mesh, values)
    return float(areas @ g[:, 0] ** 2), float(areas @ g[:, 1] ** 2)
