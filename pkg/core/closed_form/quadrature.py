"""
数值积分

- 三角形：折叠 (Duffy) 7x7 Gauss-Legendre 乘积公式，对 12 次多项式精确，
  在一致细分的子网格上使用；可对跨越曲线的单元局部加密
- 扇形：极坐标下的 Gauss-Legendre 乘积公式
"""

import logging
from functools import lru_cache
from typing import Callable, Optional, Tuple

import numpy as np
from numpy.polynomial.legendre import leggauss

from core.geometry.triangle import Triangle

logger = logging.getLogger(__name__)

RULE_POINTS = 7

PointFunction = Callable[[np.ndarray], np.ndarray]
CellMask = Callable[[np.ndarray], np.ndarray]


@lru_cache(maxsize=8)
def gauss_legendre_01(n: int) -> Tuple[np.ndarray, np.ndarray]:
    """[0, 1] 上的 n 点 Gauss-Legendre 节点和权重"""
    x, w = leggauss(n)
    return 0.5 * (x + 1.0), 0.5 * w


@lru_cache(maxsize=8)
def collapsed_triangle_rule(n: int = RULE_POINTS) -> Tuple[np.ndarray, np.ndarray]:
    """
    参考三角形 (0,0),(1,0),(0,1) 上的折叠乘积公式

    Returns:
        (points, weights): points 形状 (n², 2)，权重之和为 1/2
    """
    u, wu = gauss_legendre_01(n)
    v, wv = gauss_legendre_01(n)
    uu, vv = np.meshgrid(u, v, indexing="ij")
    points = np.column_stack((uu.ravel(), (vv * (1.0 - uu)).ravel()))
    weights = (np.outer(wu * (1.0 - u), wv)).ravel()
    return points, weights


def refine_cells(cells: np.ndarray) -> np.ndarray:
    """每个三角形按边中点分成 4 个，cells 形状 (M, 3, 2)"""
    a, b, c = cells[:, 0], cells[:, 1], cells[:, 2]
    ab, bc, ca = 0.5 * (a + b), 0.5 * (b + c), 0.5 * (c + a)
    children = np.stack([
        np.stack([a, ab, ca], axis=1),
        np.stack([ab, b, bc], axis=1),
        np.stack([ca, bc, c], axis=1),
        np.stack([ab, bc, ca], axis=1),
    ], axis=1)
    return children.reshape(-1, 3, 2)


def uniform_cells(t: Triangle, level: int) -> np.ndarray:
    """三角形的 level² 个重心细分子单元"""
    p = t.points
    e1, e2 = (p[1] - p[0]) / level, (p[2] - p[0]) / level
    cells = []
    for i in range(level):
        for j in range(level - i):
            base = p[0] + i * e1 + j * e2
            cells.append([base, base + e1, base + e2])
            if i + j < level - 1:
                cells.append([base + e1, base + e1 + e2, base + e2])
    return np.array(cells)


def integrate_cells(f: PointFunction, cells: np.ndarray) -> np.ndarray:
    """在一组单元上积分，f 接受 (N, 2) 点集，返回 (N,) 或 (N, k)"""
    ref_pts, ref_w = collapsed_triangle_rule()
    a = cells[:, 0]
    e1 = cells[:, 1] - a
    e2 = cells[:, 2] - a
    jac = np.abs(e1[:, 0] * e2[:, 1] - e1[:, 1] * e2[:, 0])
    pts = (a[:, None, :]
           + ref_pts[None, :, 0:1] * e1[:, None, :]
           + ref_pts[None, :, 1:2] * e2[:, None, :])
    values = np.asarray(f(pts.reshape(-1, 2)), dtype=float)
    values = values.reshape(cells.shape[0], ref_w.size, *values.shape[1:])
    weights = ref_w[None, :] * jac[:, None]
    return np.tensordot(weights, values, axes=([0, 1], [0, 1]))


def integrate_over_triangle(f: PointFunction, t: Triangle, level: int = 8,
                            refine_where: Optional[CellMask] = None,
                            extra_levels: int = 4):
    """
    在三角形上积分

    Args:
        f: 被积函数
        t: 积分区域
        level: 一致细分层级
        refine_where: 返回需要局部加密的单元掩码（例如跨越不光滑曲线的单元）
        extra_levels: 局部加密的额外层数

    Returns:
        积分值（标量或向量）
    """
    cells = uniform_cells(t, level)
    total = 0.0
    if refine_where is not None:
        for _ in range(extra_levels):
            mask = np.asarray(refine_where(cells), dtype=bool)
            if not mask.any():
                break
            total = total + integrate_cells(f, cells[~mask])
            cells = refine_cells(cells[mask])
    return total + integrate_cells(f, cells)


def integrate_with_estimate(f: PointFunction, t: Triangle, level: int = 8,
                            **kwargs) -> Tuple[float, float]:
    """积分值及误差估计（与再细分一次的结果之差）"""
    coarse = integrate_over_triangle(f, t, level, **kwargs)
    fine = integrate_over_triangle(f, t, 2 * level, **kwargs)
    return fine, np.max(np.abs(np.asarray(fine) - np.asarray(coarse)))


def integrate_over_sector(f: PointFunction, center, radius: float,
                          theta0: float, theta1: float,
                          n_radial: int = 24, n_angular: int = 24,
                          panels: int = 4):
    """
    扇形 {center + r(cos θ, sin θ): 0<r<radius, θ0<θ<θ1} 上的积分

    径向分成 panels 段，每段 n_radial 点；角向 n_angular 点。
    """
    r_nodes, r_weights = gauss_legendre_01(n_radial)
    edges = np.linspace(0.0, radius, panels + 1)
    r = np.concatenate([lo + (hi - lo) * r_nodes for lo, hi in zip(edges[:-1], edges[1:])])
    wr = np.concatenate([(hi - lo) * r_weights for lo, hi in zip(edges[:-1], edges[1:])])
    t_nodes, t_weights = gauss_legendre_01(n_angular)
    theta = theta0 + (theta1 - theta0) * t_nodes
    wt = (theta1 - theta0) * t_weights

    rr, tt = np.meshgrid(r, theta, indexing="ij")
    pts = np.column_stack(((center[0] + rr * np.cos(tt)).ravel(),
                           (center[1] + rr * np.sin(tt)).ravel()))
    values = np.asarray(f(pts), dtype=float)
    weights = (np.outer(wr, wt) * rr).ravel()
    return np.tensordot(weights, values, axes=(0, 0))
