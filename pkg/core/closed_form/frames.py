"""
刚体运动：闭式模态所在坐标系 ↔ 标准位置

标准位置：等腰三角形顶点在原点，关于正 x 轴对称（见 core.geometry.IsoscelesSpec）。
"""

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class RigidMotion:
    """c = R(angle) (p - origin)，把模态坐标 p 变到标准位置 c"""
    angle: float = 0.0
    origin: tuple = (0.0, 0.0)

    @property
    def rotation(self) -> np.ndarray:
        c, s = math.cos(self.angle), math.sin(self.angle)
        return np.array([[c, -s], [s, c]])

    def to_canonical(self, points: np.ndarray) -> np.ndarray:
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        return (pts - np.asarray(self.origin)) @ self.rotation.T

    def from_canonical(self, points: np.ndarray) -> np.ndarray:
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        return pts @ self.rotation + np.asarray(self.origin)

    def gradient_to_canonical(self, grads: np.ndarray) -> np.ndarray:
        """梯度是向量，只旋转不平移"""
        return np.atleast_2d(np.asarray(grads, dtype=float)) @ self.rotation.T

    @property
    def is_identity(self) -> bool:
        return self.angle == 0.0 and tuple(self.origin) == (0.0, 0.0)

    def to_dict(self):
        return {"angle": self.angle, "origin": list(self.origin)}


IDENTITY = RigidMotion()

# 等边三角形 E 的顶点 (1/2, √3/2) 平移到原点，再逆时针旋转 π/2
EQUILATERAL_TO_CANONICAL = RigidMotion(angle=math.pi / 2, origin=(0.5, math.sqrt(3.0) / 2))
