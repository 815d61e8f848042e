"""
位移-求逆 Lanczos 后端

对 K − σM 做稀疏 LU 分解，作为 eigsh 的 OPinv，σ 取略小于零的位移，
使零特征值（Neumann 常数模态）附近也能稳定收敛。初始向量固定，结果可复现。
"""

import logging

import numpy as np
from scipy.sparse.linalg import LinearOperator, eigsh, splu

from core.fem.assembly import FemMatrices
from core.fem.solvers.base import EigenSolver, SolverResult

logger = logging.getLogger(__name__)


class ShiftInvertSolver(EigenSolver):
    """直接分解 + 位移求逆的 eigsh"""

    def solve(self, matrices: FemMatrices, k: int, deflate_constants: bool = True,
              length_scale: float = 1.0) -> SolverResult:
        n = matrices.size
        nev = k + 1 if deflate_constants else k
        if nev >= n:
            raise ValueError(f"请求 {nev} 个特征对，但只有 {n} 个自由度")

        sigma = self.sigma(length_scale)
        lu = splu((matrices.stiffness - sigma * matrices.mass).tocsc())
        op_inv = LinearOperator(matvec=lu.solve, shape=matrices.stiffness.shape,
                                dtype=matrices.stiffness.dtype)
        v0 = np.random.default_rng(0).standard_normal(n)

        values, vectors = eigsh(matrices.stiffness, nev, matrices.mass, sigma=sigma,
                                which="LM", OPinv=op_inv, v0=v0)
        logger.debug(f"shift_invert: n={n}, σ={sigma:.3e}, 特征值 {np.round(values, 6).tolist()}")
        result = self.finalize(matrices, values, vectors, k, deflate_constants, length_scale)
        return self.require_converged(result)
