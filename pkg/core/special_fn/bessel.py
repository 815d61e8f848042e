"""
第一类 Bessel 函数及其根

功能说明：
- bessel_j / bessel_j_derivative: 非负实数阶 J_ν(x) 及其导数（scipy.special 求值，带支持范围检查）
- bessel_j_zero: J_0 / J_1 的第 k 个正零点 j_{0,k}, j_{1,k}
- bessel_jprime_zero: J_ν' 的第一个正零点 j'_{ν,1}（网格扫描找变号区间 + brentq 二分）
- jprime_crossing: 满足 j'_{ν,1} = j_{1,1} 的阶数 ν*

所有函数都是纯函数，可以在多线程中并发调用。
"""

import logging
import math
from dataclasses import dataclass, asdict
from enum import Enum
from typing import Any, Dict

import numpy as np
from scipy.optimize import brentq
from scipy.special import jn_zeros, jv, jvp

from core.errors import ConvergenceError, DomainError

logger = logging.getLogger(__name__)

MAX_ORDER = 50.0
MAX_ARGUMENT = 1.0e4

ZERO_RESIDUAL_TOL = 1e-12
JPRIME_RESIDUAL_TOL = 1e-10

# 变号扫描的网格点数
_SCAN_POINTS = 400


class RootKind(str, Enum):
    """根的类型"""
    ZERO_OF_J = "zero_of_J"
    ZERO_OF_JPRIME = "zero_of_Jprime"


@dataclass(frozen=True)
class BesselRoot:
    """Bessel 函数（或其导数）的一个正根"""
    order: float
    kind: RootKind
    index: int
    value: float

    def residual(self) -> float:
        """在根处重新求值得到的残差"""
        if self.kind == RootKind.ZERO_OF_J:
            return abs(float(jv(self.order, self.value)))
        return abs(float(jvp(self.order, self.value)))

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data["kind"] = self.kind.value
        data["residual"] = self.residual()
        return data


def _check_order(order: float) -> None:
    if not (0.0 <= order <= MAX_ORDER) or math.isnan(order):
        raise DomainError(f"Bessel 阶数超出支持范围 [0, {MAX_ORDER}]: {order}")


def _check_argument(x: float) -> None:
    if not (0.0 <= x <= MAX_ARGUMENT) or math.isnan(x):
        raise DomainError(f"Bessel 自变量超出支持范围 [0, {MAX_ARGUMENT:g}]: {x}")


def bessel_j(order: float, x: float) -> float:
    """
    第一类 Bessel 函数 J_ν(x)

    Args:
        order: 阶数 ν，0 ≤ ν ≤ 50
        x: 自变量，0 ≤ x ≤ 1e4

    Returns:
        float: J_ν(x)

    Raises:
        DomainError: 阶数或自变量超出范围
    """
    _check_order(order)
    _check_argument(x)
    if x == 0.0:
        return 1.0 if order == 0.0 else 0.0
    return float(jv(order, x))


def bessel_j_derivative(order: float, x: float) -> float:
    """J_ν'(x)，范围检查同 bessel_j"""
    _check_order(order)
    _check_argument(x)
    return float(jvp(order, x))


def bessel_j_zero(order: int, index: int) -> float:
    """
    J_order 的第 index 个正零点

    Args:
        order: 0 或 1
        index: 根的序号，从 1 开始

    Returns:
        float: 零点 j_{order,index}
    """
    if order not in (0, 1):
        raise DomainError(f"bessel_j_zero 只支持 0 阶和 1 阶: {order}")
    if index < 1:
        raise DomainError(f"根的序号必须 ≥ 1: {index}")

    value = float(jn_zeros(order, index)[index - 1])
    residual = abs(float(jv(order, value)))
    if residual > ZERO_RESIDUAL_TOL:
        raise ConvergenceError(f"j_{{{order},{index}}} 残差过大", residual=residual)
    return value


def _jprime_window(order: float) -> float:
    """j'_{ν,1} 的搜索窗口上端"""
    return order + 3.0 * max(order, 1.0) ** (1.0 / 3.0) + math.pi


def bessel_jprime_zero(order: float) -> float:
    """
    J_ν' 的第一个正零点 j'_{ν,1}

    ν > 0 时 J_ν'(x) 在 0 附近为正，在窗口内扫描第一个变号区间后用 brentq 收紧。

    Args:
        order: 阶数 ν，0 < ν ≤ 50

    Returns:
        float: j'_{ν,1}

    Raises:
        ConvergenceError: 搜索窗口内没有变号区间或残差超标
    """
    if not (0.0 < order <= MAX_ORDER):
        raise DomainError(f"bessel_jprime_zero 需要 0 < ν ≤ {MAX_ORDER}: {order}")

    # j'_{ν,1} > sqrt(ν(ν+2))，从它的一半开始扫描
    start = 0.5 * math.sqrt(order * (order + 2.0))
    stop = _jprime_window(order)
    grid = np.linspace(start, stop, _SCAN_POINTS)
    values = jvp(order, grid)

    sign_changes = np.nonzero(np.sign(values[:-1]) * np.sign(values[1:]) <= 0)[0]
    if sign_changes.size == 0:
        raise ConvergenceError(
            f"在 [{start:.4f}, {stop:.4f}] 内没有找到 J_{order}' 的变号区间",
            details={"order": order},
        )

    i = int(sign_changes[0])
    lo, hi = float(grid[i]), float(grid[i + 1])
    if values[i] == 0.0:
        root = lo
    else:
        root = brentq(lambda x: float(jvp(order, x)), lo, hi, xtol=1e-14, rtol=4 * np.finfo(float).eps, maxiter=200)

    residual = abs(float(jvp(order, root)))
    if residual > JPRIME_RESIDUAL_TOL:
        raise ConvergenceError(f"j'_{{{order},1}} 残差过大", residual=residual)
    return float(root)


def jprime_crossing() -> float:
    """
    满足 j'_{ν,1} = j_{1,1} 的阶数 ν*（约 2.6741）

    j'_{ν,1} 关于 ν 严格递增，在 [2.6, 2.7] 上对差值做 brentq。
    """
    j11 = bessel_j_zero(1, 1)
    nu = brentq(lambda v: bessel_jprime_zero(v) - j11, 2.6, 2.7, xtol=1e-13, maxiter=200)
    logger.debug(f"j'_ν,1 = j_1,1 的交点: ν* = {nu:.10f}")
    return float(nu)


def describe_root(order: float, kind: RootKind, index: int = 1) -> BesselRoot:
    """
    计算并包装一个根

    Args:
        order: 阶数
        kind: 根的类型
        index: 序号（导数零点只支持第一个）

    Returns:
        BesselRoot: 根及其元数据
    """
    if kind == RootKind.ZERO_OF_J:
        value = bessel_j_zero(int(order), index)
    else:
        if index != 1:
            raise DomainError("导数零点只支持第一个根")
        value = bessel_jprime_zero(order)
    return BesselRoot(order=float(order), kind=kind, index=index, value=value)


# 常用常数
J01 = float(jn_zeros(0, 1)[0])
J11 = float(jn_zeros(1, 1)[0])
