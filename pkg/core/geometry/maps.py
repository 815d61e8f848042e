"""
几何变换

功能说明：
- LinearMap: 2x2 线性映射（对角映射 τ、拉伸等）
- tau_map: T(α) → T(β) 的对角映射 τ(x,y) = (x cos(β/2)/cos(α/2), y sin(β/2)/sin(α/2))
- SigmaMap: 扇形 S(α) → T(α) 的径向映射 σ(r,θ) = (r ρ(θ), θ)，ρ(θ) = cos(α/2)/cos θ
- stretch_to_isosceles / stretch_factor: 垂直于最长边拉伸到两边等于直径
- bisect_stretch_step: 对分再拉伸的孔径递推 sin(α'/2) = sin(α/2)/√2
"""

import logging
import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from core.errors import ApertureRangeError
from core.geometry.triangle import IsoscelesSpec, Triangle

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LinearMap:
    """平面线性映射 x ↦ A x"""
    matrix: Tuple[Tuple[float, float], Tuple[float, float]]

    @property
    def array(self) -> np.ndarray:
        return np.array(self.matrix, dtype=float)

    @property
    def determinant(self) -> float:
        return float(np.linalg.det(self.array))

    def apply(self, points: np.ndarray) -> np.ndarray:
        """作用于 (N, 2) 点集或单个点"""
        pts = np.asarray(points, dtype=float)
        return pts @ self.array.T

    def apply_triangle(self, t: Triangle) -> Triangle:
        return Triangle(tuple(map(tuple, self.apply(t.points))))

    def inverse(self) -> "LinearMap":
        inv = np.linalg.inv(self.array)
        return LinearMap(tuple(map(tuple, inv)))

    def compose(self, other: "LinearMap") -> "LinearMap":
        """self ∘ other"""
        return LinearMap(tuple(map(tuple, self.array @ other.array)))

    @classmethod
    def diagonal(cls, sx: float, sy: float) -> "LinearMap":
        return cls(((sx, 0.0), (0.0, sy)))


def _check_open_aperture(value: float, name: str) -> None:
    if not (0.0 < value < math.pi):
        raise ApertureRangeError(f"{name} 必须在 (0, π) 内: {value}")


def tau_map(alpha: float, beta: float) -> LinearMap:
    """
    对角映射 τ: T(α) → T(β)（单位腰长）

    Args:
        alpha: 源孔径
        beta: 目标孔径

    Returns:
        LinearMap: diag(cos(β/2)/cos(α/2), sin(β/2)/sin(α/2))
    """
    _check_open_aperture(alpha, "alpha")
    _check_open_aperture(beta, "beta")
    return LinearMap.diagonal(
        math.cos(beta / 2) / math.cos(alpha / 2),
        math.sin(beta / 2) / math.sin(alpha / 2),
    )


@dataclass(frozen=True)
class SigmaMap:
    """
    径向映射 σ: S(α) → T(α)

    扇形 S(α) = {0 < r < l, |θ| < α/2}，σ 把半径乘以 ρ(θ) = cos(α/2)/cos θ。
    """
    alpha: float
    leg: float = 1.0

    def __post_init__(self):
        _check_open_aperture(self.alpha, "alpha")

    def rho(self, theta):
        return math.cos(self.alpha / 2) / np.cos(theta)

    def log_derivative(self, theta):
        """ρ'/ρ = tan θ，在扇形上 |ρ'/ρ| ≤ tan(α/2)"""
        return np.tan(theta)

    def forward_polar(self, r, theta):
        return r * self.rho(theta), theta

    def inverse_polar(self, r, theta):
        return r / self.rho(theta), theta

    def forward(self, points: np.ndarray) -> np.ndarray:
        """笛卡尔坐标下的 σ"""
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        r = np.hypot(pts[:, 0], pts[:, 1])
        theta = np.arctan2(pts[:, 1], pts[:, 0])
        r2, _ = self.forward_polar(r, theta)
        return np.column_stack((r2 * np.cos(theta), r2 * np.sin(theta)))

    def inverse(self, points: np.ndarray) -> np.ndarray:
        """笛卡尔坐标下的 σ⁻¹"""
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        r = np.hypot(pts[:, 0], pts[:, 1])
        theta = np.arctan2(pts[:, 1], pts[:, 0])
        r2, _ = self.inverse_polar(r, theta)
        return np.column_stack((r2 * np.cos(theta), r2 * np.sin(theta)))


def sigma_map(alpha: float, l: float = 1.0) -> SigmaMap:
    """构造 S(α) → T(α) 的径向映射"""
    return SigmaMap(alpha=alpha, leg=l)


def _longest_side_frame(t: Triangle):
    """
    以最长边 PQ 为基准建立坐标：返回 (P, e1, e2, a, b, apex_index)

    a 是顶点 R 在 PQ 上的投影长度，已经保证 a ≥ D/2。
    """
    pts = t.points
    edges = t.edge_lengths()
    apex = int(np.argmax(edges))
    p_idx, q_idx = (apex + 1) % 3, (apex + 2) % 3
    d = edges[apex]

    def _frame(p_i: int, q_i: int):
        p = pts[p_i]
        e1 = (pts[q_i] - p) / d
        e2 = np.array([-e1[1], e1[0]])
        rel = pts[apex] - p
        return p, e1, e2, float(rel @ e1), float(rel @ e2)

    p, e1, e2, a, b = _frame(p_idx, q_idx)
    if a < d / 2:
        p, e1, e2, a, b = _frame(q_idx, p_idx)
    return p, e1, e2, a, b, apex, d


def stretch_factor(t: Triangle) -> float:
    """拉伸因子 t = √(D² − a²)/|b| ≥ 1"""
    _, _, _, a, b, _, d = _longest_side_frame(t)
    return math.sqrt(max(d * d - a * a, 0.0)) / abs(b)


def stretch_to_isosceles(t: Triangle) -> Triangle:
    """
    沿垂直于最长边的方向拉伸，直到另一条边也等于直径

    结果保持原坐标系和最长边不动，是亚等边或等边三角形。

    Args:
        t: 任意非退化三角形

    Returns:
        Triangle: 拉伸后的三角形（已满足条件时返回原三角形）
    """
    p, e1, e2, a, b, apex, d = _longest_side_frame(t)
    new_b = math.copysign(math.sqrt(max(d * d - a * a, 0.0)), b)
    factor = abs(new_b / b)
    if abs(factor - 1.0) <= 1e-12:
        return t

    new_apex = p + a * e1 + new_b * e2
    vertices = list(t.vertices)
    vertices[apex] = (float(new_apex[0]), float(new_apex[1]))
    logger.debug(f"拉伸因子 {factor:.6f}，直径 {d:.6f}")
    return Triangle(tuple(vertices))


def bisect_stretch_step(alpha: float) -> float:
    """
    对分再拉伸一步：sin(α'/2) = sin(α/2)/√2

    Args:
        alpha: 孔径，0 < α ≤ π/3

    Returns:
        float: 新孔径 α'（满足 cos α' = cos²(α/2)）
    """
    if not (0.0 < alpha <= math.pi / 3 + 1e-12):
        raise ApertureRangeError(f"对分拉伸需要 0 < α ≤ π/3: {alpha}")
    return 2.0 * math.asin(math.sin(alpha / 2) / math.sqrt(2.0))


def tau_image(alpha: float, beta: float, leg: float = 1.0) -> Triangle:
    """T(α) 在 τ 下的像（应与 T(β) 重合）"""
    return tau_map(alpha, beta).apply_triangle(IsoscelesSpec(alpha, leg).to_triangle())
