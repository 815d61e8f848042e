"""
特征值求解器模块

抽象基类 + 工厂，按问题规模在 shift_invert 与 lobpcg 后端之间选择。

快速开始：
    from core.fem.solvers import solver_for

    solver = solver_for(matrices.size)
    result = solver.solve(matrices, k=2)
"""

from .base import EigenSolver, SolverConfig, SolverResult
from .factory import (
    EigenSolverFactory,
    create_solver,
    get_available_solver_types,
    solver_for,
)
from .lobpcg import LobpcgSolver
from .shift_invert import ShiftInvertSolver

__all__ = [
    "EigenSolver",
    "SolverConfig",
    "SolverResult",
    "EigenSolverFactory",
    "create_solver",
    "get_available_solver_types",
    "solver_for",
    "LobpcgSolver",
    "ShiftInvertSolver",
]
