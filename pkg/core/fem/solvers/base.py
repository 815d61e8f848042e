"""
特征值求解器基础抽象类

本模块定义了广义对称特征值问题 K u = μ M u 的统一求解接口。

核心设计思想：
- 抽象基类模式：所有后端实现同一个 solve 接口
- 配置驱动：通过 SolverConfig 管理位移、容差、迭代次数
- 结果标准化：SolverResult 统一返回特征值、M 正交归一的特征向量和残差
- 常数模态处理：Neumann 问题的零特征值由后端统一剔除，并显式投影掉常数分量

主要组件：
- SolverConfig: 求解器配置
- SolverResult: 求解结果
- EigenSolver: 抽象基类
"""

import abc
import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Optional

import numpy as np

from core.errors import ConvergenceError
from core.fem.assembly import FemMatrices

logger = logging.getLogger(__name__)

# 残差上限：‖Ku − μMu‖ / ‖Mu‖ ≤ RESIDUAL_FACTOR · μ
RESIDUAL_FACTOR = 1e-8


@dataclass
class SolverConfig:
    """求解器配置"""
    name: str
    type: str
    shift: float = -0.01
    tolerance: float = 1e-10
    maxiter: int = 400
    extra_params: Dict[str, Any] = field(default_factory=dict)


@dataclass
class SolverResult:
    """求解结果，特征值升序，特征向量按列 M 正交归一"""
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    residuals: np.ndarray
    backend: str


class EigenSolver(abc.ABC):
    """
    特征值求解器抽象基类

    所有后端都需要实现这个接口。
    """

    def __init__(self, config: SolverConfig):
        """
        初始化求解器

        Args:
            config: 求解器配置
        """
        self.config = config

    @abc.abstractmethod
    def solve(self, matrices: FemMatrices, k: int, deflate_constants: bool = True,
              length_scale: float = 1.0) -> SolverResult:
        """
        求最小的 k 个（非零）特征对

        Args:
            matrices: 刚度矩阵和质量矩阵
            k: 特征对个数
            deflate_constants: Neumann 问题为 True，剔除零特征值和常数分量
            length_scale: 区域的长度尺度（直径），位移按 shift / length_scale² 取

        Returns:
            SolverResult: 求解结果
        """
        pass

    def is_available(self) -> bool:
        """后端是否可用"""
        return True

    def sigma(self, length_scale: float) -> float:
        return self.config.shift / (length_scale * length_scale)

    @staticmethod
    def residuals(matrices: FemMatrices, values: np.ndarray, vectors: np.ndarray) -> np.ndarray:
        """每个特征对的残差 ‖Ku − μMu‖₂ / ‖Mu‖₂"""
        ku = matrices.stiffness @ vectors
        mu = matrices.mass @ vectors
        return np.linalg.norm(ku - mu * values[None, :], axis=0) / np.linalg.norm(mu, axis=0)

    @staticmethod
    def remove_constants(matrices: FemMatrices, vectors: np.ndarray) -> np.ndarray:
        """M 内积意义下投影掉常数分量"""
        ones = np.ones(vectors.shape[0])
        m_ones = matrices.mass @ ones
        coeffs = (m_ones @ vectors) / (m_ones @ ones)
        return vectors - np.outer(ones, coeffs)

    @staticmethod
    def normalize(matrices: FemMatrices, vectors: np.ndarray) -> np.ndarray:
        """M 范数归一，并让绝对值最大的分量为正（结果可复现）"""
        norms = np.sqrt(np.einsum("ij,ij->j", vectors, matrices.mass @ vectors))
        vectors = vectors / norms[None, :]
        idx = np.argmax(np.abs(vectors), axis=0)
        signs = np.sign(vectors[idx, np.arange(vectors.shape[1])])
        signs[signs == 0] = 1.0
        return vectors * signs[None, :]

    def finalize(self, matrices: FemMatrices, values: np.ndarray, vectors: np.ndarray,
                 k: int, deflate_constants: bool, length_scale: float) -> SolverResult:
        """排序、剔除零模态、投影、归一并计算残差"""
        order = np.argsort(values)
        values, vectors = values[order], vectors[:, order]
        if deflate_constants:
            # 零特征值（常数模态）是绝对值最小的那个
            zero = int(np.argmin(np.abs(values)))
            keep = [i for i in range(values.size) if i != zero]
            values, vectors = values[keep], vectors[:, keep]
            vectors = self.remove_constants(matrices, vectors)
        values, vectors = values[:k], vectors[:, :k]
        vectors = self.normalize(matrices, vectors)
        residuals = self.residuals(matrices, values, vectors)
        return SolverResult(eigenvalues=values, eigenvectors=vectors,
                            residuals=residuals, backend=self.config.type)

    @staticmethod
    def check_residuals(result: SolverResult, factor: float = RESIDUAL_FACTOR) -> Optional[float]:
        """返回第一个超标的残差，全部合格时返回 None"""
        limits = factor * np.maximum(np.abs(result.eigenvalues), 1e-300)
        bad = np.flatnonzero(result.residuals > limits)
        return float(result.residuals[bad[0]]) if bad.size else None

    def require_converged(self, result: SolverResult) -> SolverResult:
        worst = self.check_residuals(result)
        if worst is not None:
            raise ConvergenceError(
                f"{self.config.type} 求解残差超标: {worst:.3e}",
                residual=worst,
                details={"eigenvalues": result.eigenvalues.tolist()},
            )
        return result
