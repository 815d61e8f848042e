"""
特征值求解器工厂模块

根据配置创建求解器实例，并按问题规模选择后端。

支持的后端类型：
- shift_invert: 稀疏 LU + 位移求逆 Lanczos（自由度不超过 direct_limit 时使用）
- lobpcg: 块子空间迭代（更大的问题）
"""

import logging
from typing import Any, Dict, Optional

from core.errors import SettingsError
from core.fem.solvers.base import EigenSolver, SolverConfig
from core.fem.solvers.lobpcg import LobpcgSolver
from core.fem.solvers.shift_invert import ShiftInvertSolver
from core.settings import LabSettings, get_settings

logger = logging.getLogger(__name__)


class EigenSolverFactory:
    """
    求解器工厂类

    负责根据配置创建相应的求解器实例
    """

    # 支持的后端类型映射
    SOLVER_TYPES = {
        "shift_invert": ShiftInvertSolver,
        "lobpcg": LobpcgSolver,
    }

    @classmethod
    def create_solver(cls, config: Dict[str, Any]) -> EigenSolver:
        """
        根据配置创建求解器

        Args:
            config: 配置字典，格式如：
                {
                    "name": "default",
                    "type": "shift_invert",
                    "shift": -0.01,
                    "tolerance": 1e-10
                }

        Returns:
            EigenSolver: 求解器实例

        Raises:
            SettingsError: 配置缺少字段或类型不支持
        """
        if "type" not in config:
            raise SettingsError("求解器配置缺少 'type' 字段")

        solver_type = config["type"].lower()
        if solver_type not in cls.SOLVER_TYPES:
            available_types = list(cls.SOLVER_TYPES.keys())
            raise SettingsError(f"不支持的求解器类型: {solver_type}，可用类型: {available_types}")

        solver_config = cls._create_config_from_dict(config)
        solver = cls.SOLVER_TYPES[solver_type](solver_config)
        logger.debug(f"创建 {solver_type} 求解器: {solver_config.name}")
        return solver

    @classmethod
    def for_problem_size(cls, unknowns: int, settings: Optional[LabSettings] = None) -> EigenSolver:
        """
        按自由度个数选择后端

        Args:
            unknowns: 自由度个数
            settings: 配置，None 时使用全局配置

        Returns:
            EigenSolver: 不超过 direct_limit 用 shift_invert，否则用 lobpcg
        """
        settings = settings or get_settings()
        solver_settings = settings.solver
        solver_type = "shift_invert" if unknowns <= solver_settings.direct_limit else "lobpcg"
        return cls.create_solver({
            "name": f"{solver_type}-{unknowns}",
            "type": solver_type,
            "shift": solver_settings.shift,
            "tolerance": solver_settings.tolerance,
            "maxiter": solver_settings.lobpcg_maxiter,
        })

    @classmethod
    def get_available_types(cls) -> list:
        """获取所有可用的后端类型"""
        return list(cls.SOLVER_TYPES.keys())

    @staticmethod
    def _create_config_from_dict(config_dict: Dict[str, Any]) -> SolverConfig:
        extra_params = {key: config_dict[key] for key in ("drop_tol", "fill_factor") if key in config_dict}
        return SolverConfig(
            name=config_dict.get("name", config_dict["type"]),
            type=config_dict["type"].lower(),
            shift=float(config_dict.get("shift", -0.01)),
            tolerance=float(config_dict.get("tolerance", 1e-10)),
            maxiter=int(config_dict.get("maxiter", 400)),
            extra_params=extra_params,
        )


def create_solver(config: Dict[str, Any]) -> EigenSolver:
    """创建求解器的便捷函数"""
    return EigenSolverFactory.create_solver(config)


def solver_for(unknowns: int, settings: Optional[LabSettings] = None) -> EigenSolver:
    """按规模选择求解器的便捷函数"""
    return EigenSolverFactory.for_problem_size(unknowns, settings)


def get_available_solver_types() -> list:
    """获取可用后端类型的便捷函数"""
    return EigenSolverFactory.get_available_types()
