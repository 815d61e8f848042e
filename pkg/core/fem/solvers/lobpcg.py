"""
LOBPCG 块子空间迭代后端（大规模问题）

Neumann 问题把常数向量作为约束 Y 排除在迭代子空间之外；预条件子是 K − σM 的
不完全 LU。没有达到残差要求时退回 shift_invert 并记录警告。
"""

import logging

import numpy as np
from scipy.sparse.linalg import LinearOperator, lobpcg, spilu

from core.fem.assembly import FemMatrices
from core.fem.solvers.base import EigenSolver, SolverConfig, SolverResult
from core.fem.solvers.shift_invert import ShiftInvertSolver

logger = logging.getLogger(__name__)

# 块大小比请求的特征对多几列，收敛更稳
EXTRA_BLOCK = 3


class LobpcgSolver(EigenSolver):
    """带常数约束和 ILU 预条件的 LOBPCG"""

    def solve(self, matrices: FemMatrices, k: int, deflate_constants: bool = True,
              length_scale: float = 1.0) -> SolverResult:
        n = matrices.size
        block = min(k + EXTRA_BLOCK, n - 1)
        sigma = self.sigma(length_scale)

        ilu = spilu((matrices.stiffness - sigma * matrices.mass).tocsc(),
                    drop_tol=self.config.extra_params.get("drop_tol", 1e-5),
                    fill_factor=self.config.extra_params.get("fill_factor", 20))
        precond = LinearOperator(shape=(n, n), matvec=ilu.solve, dtype=float)

        rng = np.random.default_rng(0)
        x0 = rng.standard_normal((n, block))
        constraint = np.ones((n, 1)) if deflate_constants else None

        values, vectors = lobpcg(matrices.stiffness, x0, B=matrices.mass, M=precond,
                                 Y=constraint, tol=self.config.tolerance,
                                 maxiter=self.config.maxiter, largest=False)
        logger.debug(f"lobpcg: n={n}, block={block}, 特征值 {np.round(values, 6).tolist()}")

        # 常数已经被约束排除，不再剔除零特征值
        result = self.finalize(matrices, values, vectors, k, False, length_scale)
        if deflate_constants:
            result.eigenvectors = self.normalize(matrices, self.remove_constants(matrices, result.eigenvectors))
            result.residuals = self.residuals(matrices, result.eigenvalues, result.eigenvectors)

        worst = self.check_residuals(result)
        if worst is not None:
            logger.warning(f"lobpcg 残差 {worst:.3e} 未达标，改用 shift_invert")
            fallback = ShiftInvertSolver(SolverConfig(
                name=f"{self.config.name}-fallback", type="shift_invert",
                shift=self.config.shift, tolerance=self.config.tolerance,
            ))
            return fallback.solve(matrices, k, deflate_constants, length_scale)
        return result
