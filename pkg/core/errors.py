"""
tritone 异常定义

所有可预期的失败都以 SpectralLabError 的子类抛出，每个异常携带一个
error_code，命令层据此决定退出码并输出统一格式的错误信息。

错误码:
    - DOMAIN_ERROR: 参数超出支持范围
    - DEGENERATE_TRIANGLE: 三角形退化（面积过小）
    - APERTURE_RANGE: 孔径不在公式的适用区间
    - CONVERGENCE_FAILED: 特征值求解或求根未收敛
    - MESH_INCOMPATIBLE: 网格不满足所需结构（如无反射置换）
    - INVALID_SETTINGS: 配置文件无效
"""

from datetime import datetime
from typing import Any, Dict, Optional


class SpectralLabError(Exception):
    """实验室异常基类"""

    error_code = "LAB_ERROR"

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.message = message
        self.details = details or {}

    def to_dict(self) -> Dict[str, Any]:
        """转换为字典格式"""
        return {
            "error_code": self.error_code,
            "message": self.message,
            "details": self.details,
            "timestamp": datetime.now().isoformat(),
        }


class DomainError(SpectralLabError, ValueError):
    """参数超出支持范围"""

    error_code = "DOMAIN_ERROR"


class DegenerateTriangleError(DomainError):
    """三角形退化"""

    error_code = "DEGENERATE_TRIANGLE"


class ApertureRangeError(DomainError):
    """孔径不在适用区间"""

    error_code = "APERTURE_RANGE"


class ConvergenceError(SpectralLabError):
    """迭代未收敛，residual 为实际达到的残差"""

    error_code = "CONVERGENCE_FAILED"

    def __init__(self, message: str, residual: float = float("nan"),
                 details: Optional[Dict[str, Any]] = None):
        super().__init__(message, details)
        self.residual = residual
        self.details.setdefault("residual", residual)


class MeshCompatibilityError(SpectralLabError):
    """网格结构不满足要求"""

    error_code = "MESH_INCOMPATIBLE"


class SettingsError(SpectralLabError):
    """配置无效"""

    error_code = "INVALID_SETTINGS"
