"""
实验室配置模块

从 lab_settings.yaml 读取配置并用 pydantic 模型校验，提供进程级缓存的
配置实例。

使用方式:
    from core.settings import get_settings

    settings = get_settings()
    levels = settings.levels_for("fast")
"""

import logging
import os
from pathlib import Path
from typing import Dict, List, Optional

import yaml
from pydantic import BaseModel, Field, ValidationError, field_validator, model_validator

from core.errors import SettingsError

logger = logging.getLogger(__name__)

DEFAULT_SETTINGS_PATH = Path(__file__).resolve().parent.parent / "lab_settings.yaml"
THREADS_ENV = "TRITONE_THREADS"


class SolverSettings(BaseModel):
    """特征值求解器配置"""
    direct_limit: int = Field(20000, gt=0)
    shift: float = Field(-0.01, lt=0.0)
    tolerance: float = Field(1e-10, gt=0.0)
    lobpcg_maxiter: int = Field(400, gt=0)


class LoggingSettings(BaseModel):
    """日志配置"""
    level: str = "INFO"
    console_output: bool = True
    logs_dir: Optional[str] = None


class LabSettings(BaseModel):
    """实验室全局配置"""
    budgets: Dict[str, List[int]] = Field(default_factory=lambda: {
        "fast": [16, 32, 64],
        "default": [32, 64, 128],
        "precise": [64, 128, 256],
    })
    default_budget: str = "default"
    solver: SolverSettings = Field(default_factory=SolverSettings)
    slack_factor: float = Field(3.0, gt=0.0)
    fem_aperture_floor: float = Field(0.05, gt=0.0)
    figure_tolerance: float = Field(0.005, gt=0.0)
    figure_flag_tolerance: float = Field(0.01, gt=0.0)
    threads: int = Field(1, ge=1)
    logging: LoggingSettings = Field(default_factory=LoggingSettings)

    @field_validator("budgets")
    @classmethod
    def _check_budgets(cls, budgets: Dict[str, List[int]]) -> Dict[str, List[int]]:
        for name, levels in budgets.items():
            if len(levels) < 3:
                raise ValueError(f"预算 {name} 至少需要 3 个网格层级")
            for coarse, fine in zip(levels, levels[1:]):
                if fine != 2 * coarse:
                    raise ValueError(f"预算 {name} 的相邻层级之比必须为 2: {levels}")
        return budgets

    @model_validator(mode="after")
    def _check_default_budget(self) -> "LabSettings":
        if self.default_budget not in self.budgets:
            raise ValueError(f"默认预算 {self.default_budget} 未定义")
        return self

    def levels_for(self, budget: Optional[str] = None) -> List[int]:
        """
        获取预算对应的网格层级

        Args:
            budget: 预算名称，None 表示默认预算

        Returns:
            List[int]: 网格层级列表
        """
        name = budget or self.default_budget
        if name not in self.budgets:
            raise SettingsError(f"未知预算: {name}，可用预算: {list(self.budgets)}")
        return list(self.budgets[name])

    def thread_count(self) -> int:
        """线程数，环境变量优先"""
        raw = os.environ.get(THREADS_ENV)
        if raw:
            try:
                return max(1, int(raw))
            except ValueError:
                logger.warning(f"忽略无效的 {THREADS_ENV}={raw!r}")
        return self.threads


def load_settings(path: Optional[str] = None) -> LabSettings:
    """
    从 YAML 文件加载配置

    Args:
        path: 配置文件路径，None 时使用仓库根目录的 lab_settings.yaml

    Returns:
        LabSettings: 校验后的配置

    Raises:
        SettingsError: 文件无法解析或内容不合法
    """
    settings_path = Path(path) if path else DEFAULT_SETTINGS_PATH
    if not settings_path.exists():
        if path:
            raise SettingsError(f"配置文件不存在: {settings_path}")
        logger.debug("未找到 lab_settings.yaml，使用内置默认配置")
        return LabSettings()

    try:
        with open(settings_path, "r", encoding="utf-8") as f:
            raw = yaml.safe_load(f) or {}
        settings = LabSettings.model_validate(raw)
    except (yaml.YAMLError, ValidationError) as e:
        raise SettingsError(f"配置文件无效: {settings_path}: {e}") from e

    logger.debug(f"已加载配置: {settings_path}")
    return settings


_settings: Optional[LabSettings] = None


def get_settings() -> LabSettings:
    """获取全局配置实例"""
    global _settings
    if _settings is None:
        _settings = load_settings()
    return _settings


def set_settings(settings: Optional[LabSettings]) -> None:
    """替换全局配置（None 表示下次访问时重新加载）"""
    global _settings
    _settings = settings
