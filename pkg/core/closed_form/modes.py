"""
闭式模态与闭式特征值

核心功能：
- 等边三角形 E 上的 u1（反对称）、u2（对称），特征值 16π²/9，以及积分表
- 扇形 S(α) 的径向基本模态 J0(j11 r/l) 和角向模态的音调
- 直角等腰三角形的对称模态 cos(√2πx) + cos(√2πy)，特征值 2π²
- Cheng 双峰试探函数（超等边三角形），Rayleigh 商 4 j01²/D²
- 扇形经 σ⁻¹ 移植到 T(α) 的试探函数，Rayleigh 商 j11²/(l² cos²(α/2))
- 区间 Neumann 音调、Dirichlet 弧扇形音调、拉伸后的 Rayleigh 商

每个模态记录一个到标准位置的刚体运动（见 frames.py），与有限元比较时只在这里换坐标。
"""

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Dict, Optional, Tuple

import numpy as np
from scipy.special import jv

from core.closed_form.frames import EQUILATERAL_TO_CANONICAL, IDENTITY, RigidMotion
from core.closed_form.quadrature import (
    integrate_over_sector,
    integrate_over_triangle,
    integrate_with_estimate,
)
from core.errors import ApertureRangeError, DomainError
from core.geometry.triangle import IsoscelesSpec, Triangle, unit_equilateral
from core.special_fn import J01, J11, bessel_jprime_zero

logger = logging.getLogger(__name__)

SQRT3 = math.sqrt(3.0)
EQUILATERAL_EIGENVALUE = 16.0 * math.pi ** 2 / 9.0
RIGHT_ISOSCELES_EIGENVALUE = 2.0 * math.pi ** 2
# 扇形模态公式的适用范围 α < π/2.68
SECTOR_MODE_LIMIT = math.pi / 2.68

PointFunction = Callable[[np.ndarray], np.ndarray]


class ModeDomain(str, Enum):
    """模态所在区域"""
    EQUILATERAL_E = "equilateral_E"
    SECTOR = "sector"
    RIGHT_ISOSCELES = "right_isosceles"
    DISK = "disk"
    INTERVAL = "interval"
    ISOSCELES = "isosceles"


class ModeLabel(str, Enum):
    """模态标签"""
    U1_ANTISYMMETRIC = "u1_antisymmetric"
    U2_SYMMETRIC = "u2_symmetric"
    RADIAL_J0 = "radial_J0"
    CHENG_TWO_BUMP = "cheng_two_bump"
    SYMMETRIC_COS_PAIR = "symmetric_cos_pair"
    INTERVAL_MODE = "interval_mode"
    TRANSPLANTED_RADIAL = "transplanted_radial"


@dataclass(frozen=True)
class SectorRegion:
    """圆心 center、半径 radius、角度 θ0..θ1 的扇形"""
    center: Tuple[float, float]
    radius: float
    theta0: float
    theta1: float


@dataclass
class ClosedFormMode:
    """
    闭式模态

    evaluator / gradient 在模态自身的坐标系中求值，motion 把该坐标系变到标准位置。
    is_eigenfunction 为 False 时（试探函数），eigenvalue 是它的 Rayleigh 商。
    """
    domain: ModeDomain
    label: ModeLabel
    eigenvalue: float
    evaluator: PointFunction
    gradient: PointFunction
    motion: RigidMotion = IDENTITY
    triangle: Optional[Triangle] = None
    sectors: Tuple[SectorRegion, ...] = ()
    is_eigenfunction: bool = True
    params: Dict[str, float] = field(default_factory=dict)

    def __call__(self, points: np.ndarray) -> np.ndarray:
        return self.evaluator(np.atleast_2d(np.asarray(points, dtype=float)))

    def canonical_values(self, points: np.ndarray) -> np.ndarray:
        """在标准位置坐标下求值"""
        return self.evaluator(self.motion.from_canonical(points))

    def canonical_gradient(self, points: np.ndarray) -> np.ndarray:
        return self.motion.gradient_to_canonical(self.gradient(self.motion.from_canonical(points)))

    def laplacian_residual(self, points: np.ndarray, h: float = 1e-4) -> float:
        """
        五点差分检查 -Δu = μu

        Returns:
            float: max|Δu + μu| / (μ max|u|)
        """
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        dx, dy = np.array([h, 0.0]), np.array([0.0, h])
        center = self(pts)
        lap = (self(pts + dx) + self(pts - dx) + self(pts + dy) + self(pts - dy) - 4.0 * center) / h ** 2
        scale = self.eigenvalue * max(np.max(np.abs(center)), 1e-300)
        return float(np.max(np.abs(lap + self.eigenvalue * center)) / scale)

    def integrals(self, level: int = 16) -> Dict[str, float]:
        """
        区域上的积分：mean, norm2, grad_x2, grad_y2（模态坐标系）

        扇形区域用极坐标公式，三角形区域用细分的三角形公式。
        """
        def _integrand(p):
            u = self.evaluator(p)
            g = self.gradient(p)
            return np.column_stack((u, u * u, g[:, 0] ** 2, g[:, 1] ** 2))

        if self.sectors:
            total = sum(integrate_over_sector(_integrand, s.center, s.radius, s.theta0, s.theta1)
                        for s in self.sectors)
        elif self.triangle is not None:
            total = integrate_over_triangle(_integrand, self.triangle, level)
        else:
            raise DomainError(f"模态 {self.label.value} 没有可积分的区域")
        return {
            "mean": float(total[0]),
            "norm2": float(total[1]),
            "grad_x2": float(total[2]),
            "grad_y2": float(total[3]),
        }

    def rayleigh_by_quadrature(self, level: int = 16) -> float:
        q = self.integrals(level)
        return (q["grad_x2"] + q["grad_y2"]) / q["norm2"]

    def rayleigh_with_estimate(self, level: int = 8) -> Tuple[float, float]:
        """三角形区域上的 Rayleigh 商及误差估计（level 与 2·level 两层之差）"""
        if self.triangle is None:
            raise DomainError(f"模态 {self.label.value} 没有三角形区域")
        return _quotient_with_estimate(self.evaluator, self.gradient, self.triangle, level)

    def to_dict(self) -> Dict[str, object]:
        return {
            "domain": self.domain.value,
            "label": self.label.value,
            "eigenvalue": self.eigenvalue,
            "is_eigenfunction": self.is_eigenfunction,
            "motion": self.motion.to_dict(),
            "params": dict(self.params),
        }


def _quotient_with_estimate(evaluator: PointFunction, gradient: PointFunction, triangle: Triangle,
                            level: int, **kwargs) -> Tuple[float, float]:
    def _integrand(p):
        u = evaluator(p)
        g = gradient(p)
        return np.column_stack((u * u, g[:, 0] ** 2 + g[:, 1] ** 2))

    total, integral_error = integrate_with_estimate(_integrand, triangle, level, **kwargs)
    norm2, grad2 = float(total[0]), float(total[1])
    quotient = grad2 / norm2
    # 商的一阶误差传播
    return quotient, float(integral_error * (1.0 + abs(quotient)) / norm2)


# ---------------------------------------------------------------------------
# 等边三角形
# ---------------------------------------------------------------------------

def _u1(p: np.ndarray) -> np.ndarray:
    a = math.pi / 3 * (2 * p[:, 0] - 1)
    b = 2 * math.pi * p[:, 1] / SQRT3
    return 2 * (np.cos(a) + np.cos(b)) * np.sin(a)


def _u1_grad(p: np.ndarray) -> np.ndarray:
    a = math.pi / 3 * (2 * p[:, 0] - 1)
    b = 2 * math.pi * p[:, 1] / SQRT3
    da, db = 2 * math.pi / 3, 2 * math.pi / SQRT3
    ux = 2 * da * (-np.sin(a) * np.sin(a) + (np.cos(a) + np.cos(b)) * np.cos(a))
    uy = -2 * db * np.sin(b) * np.sin(a)
    return np.column_stack((ux, uy))


def _u2(p: np.ndarray) -> np.ndarray:
    a = math.pi / 3 * (2 * p[:, 0] - 1)
    b = 2 * math.pi * p[:, 1] / SQRT3
    return np.cos(2 * a) - 2 * np.cos(a) * np.cos(b)


def _u2_grad(p: np.ndarray) -> np.ndarray:
    a = math.pi / 3 * (2 * p[:, 0] - 1)
    b = 2 * math.pi * p[:, 1] / SQRT3
    da, db = 2 * math.pi / 3, 2 * math.pi / SQRT3
    ux = da * (-2 * np.sin(2 * a) + 2 * np.sin(a) * np.cos(b))
    uy = 2 * db * np.cos(a) * np.sin(b)
    return np.column_stack((ux, uy))


def equilateral_modes() -> Dict[str, ClosedFormMode]:
    """
    等边三角形 E = (0,0),(1,0),(1/2,√3/2) 的两个基本模态

    Returns:
        dict: {"u1": 反对称模态, "u2": 对称模态}，特征值都是 16π²/9
    """
    e = unit_equilateral()
    common = dict(domain=ModeDomain.EQUILATERAL_E, eigenvalue=EQUILATERAL_EIGENVALUE,
                  motion=EQUILATERAL_TO_CANONICAL, triangle=e)
    return {
        "u1": ClosedFormMode(label=ModeLabel.U1_ANTISYMMETRIC, evaluator=_u1, gradient=_u1_grad, **common),
        "u2": ClosedFormMode(label=ModeLabel.U2_SYMMETRIC, evaluator=_u2, gradient=_u2_grad, **common),
    }


@dataclass(frozen=True)
class EquilateralIntegrals:
    """u1、u2 在 E 上的积分表"""
    norm2: float
    u1x2: float
    u1y2: float
    u2x2: float
    u2y2: float

    @property
    def rayleigh_u1(self) -> float:
        return (self.u1x2 + self.u1y2) / self.norm2

    @property
    def symmetric_ratio(self) -> float:
        """∫u2x² / ∫u2y² = (32π²−243)/(32π²+243)"""
        return self.u2x2 / self.u2y2

    def to_dict(self) -> Dict[str, float]:
        return {"norm2": self.norm2, "u1x2": self.u1x2, "u1y2": self.u1y2,
                "u2x2": self.u2x2, "u2y2": self.u2y2}


def equilateral_integrals() -> EquilateralIntegrals:
    """闭式积分表"""
    big = (32 * math.pi ** 2 + 243) / (32 * SQRT3)
    small = (32 * math.pi ** 2 - 243) / (32 * SQRT3)
    return EquilateralIntegrals(norm2=3 * SQRT3 / 8, u1x2=big, u1y2=small, u2x2=small, u2y2=big)


def equilateral_integrals_by_quadrature(level: int = 8) -> EquilateralIntegrals:
    """用 12 次精确的三角形公式在细分网格上重算积分表"""
    modes = equilateral_modes()
    q1 = modes["u1"].integrals(level)
    q2 = modes["u2"].integrals(level)
    return EquilateralIntegrals(norm2=q1["norm2"], u1x2=q1["grad_x2"], u1y2=q1["grad_y2"],
                                u2x2=q2["grad_x2"], u2y2=q2["grad_y2"])


# ---------------------------------------------------------------------------
# 扇形
# ---------------------------------------------------------------------------

def _radial_mode(k: float, center=(0.0, 0.0)):
    cx, cy = center

    def evaluator(p):
        r = np.hypot(p[:, 0] - cx, p[:, 1] - cy)
        return jv(0, k * r)

    def gradient(p):
        dx, dy = p[:, 0] - cx, p[:, 1] - cy
        r = np.hypot(dx, dy)
        safe = np.where(r > 0, r, 1.0)
        g = -k * jv(1, k * r) / safe
        return np.column_stack((g * dx, g * dy))

    return evaluator, gradient


def sector_neumann_mode(alpha: float, l: float = 1.0) -> ClosedFormMode:
    """
    扇形 S(α) 的径向基本模态 J0(j11 r/l)，特征值 (j11/l)²

    Args:
        alpha: 扇形张角，需满足 α < π/2.68
        l: 半径

    Raises:
        ApertureRangeError: α ≥ π/2.68 时径向模态不保证是基本模态
    """
    if not (0.0 < alpha < SECTOR_MODE_LIMIT):
        raise ApertureRangeError(
            f"径向模态只在 0 < α < π/2.68 ≈ {SECTOR_MODE_LIMIT:.6f} 时是扇形的基本模态: {alpha}"
        )
    if l <= 0:
        raise DomainError(f"半径必须为正: {l}")
    k = J11 / l
    evaluator, gradient = _radial_mode(k)
    return ClosedFormMode(
        domain=ModeDomain.SECTOR, label=ModeLabel.RADIAL_J0, eigenvalue=k * k,
        evaluator=evaluator, gradient=gradient,
        sectors=(SectorRegion((0.0, 0.0), l, -alpha / 2, alpha / 2),),
        params={"alpha": alpha, "l": l},
    )


def sector_angular_tone(alpha: float, l: float = 1.0) -> float:
    """
    扇形第一个角向模态 cos(ν(θ+α/2)) J_ν(j'_{ν,1} r/l) 的特征值，ν = π/α

    Args:
        alpha: 张角，π/50 ≤ α < 2π
        l: 半径

    Returns:
        float: (j'_{π/α,1}/l)²
    """
    if not (math.pi / 50 <= alpha < 2 * math.pi):
        raise ApertureRangeError(f"角向音调需要 π/50 ≤ α < 2π: {alpha}")
    return (bessel_jprime_zero(math.pi / alpha) / l) ** 2


def sector_fundamental_class(alpha: float) -> str:
    """
    扇形基本模态的类型："radial" 或 "angular"

    径向候选为 j11²，角向候选为 j'_{π/α,1}²；π/α ≥ 4 时 j'_{ν,1} > ν > j11，直接判为径向。
    """
    if not (0.0 < alpha < 2 * math.pi):
        raise ApertureRangeError(f"扇形张角必须在 (0, 2π) 内: {alpha}")
    nu = math.pi / alpha
    if nu >= 4.0:
        return "radial"
    return "radial" if J11 < bessel_jprime_zero(nu) else "angular"


def sector_dirichlet_arc_tone(l: float) -> float:
    """圆弧上 Dirichlet、直边上 Neumann 的扇形基频 (j01/l)²"""
    if l <= 0:
        raise DomainError(f"半径必须为正: {l}")
    return (J01 / l) ** 2


def sector_dirichlet_arc_mode(l: float, center=(0.0, 0.0)) -> ClosedFormMode:
    """对应的模态 J0(j01 |z − center| / l)，在 |z − center| = l 处为零"""
    k = math.sqrt(sector_dirichlet_arc_tone(l))
    evaluator, gradient = _radial_mode(k, center)
    return ClosedFormMode(
        domain=ModeDomain.SECTOR, label=ModeLabel.RADIAL_J0, eigenvalue=k * k,
        evaluator=evaluator, gradient=gradient, params={"l": l},
    )


# ---------------------------------------------------------------------------
# 直角等腰三角形
# ---------------------------------------------------------------------------

def right_isosceles_symmetric_mode() -> ClosedFormMode:
    """
    T(π/2)（腰长 1，标准位置）上的对称模态 cos(√2πx) + cos(√2πy)，特征值 2π²

    该公式在标准位置下已满足 Neumann 条件，刚体运动为恒等。
    """
    k = math.sqrt(2.0) * math.pi

    def evaluator(p):
        return np.cos(k * p[:, 0]) + np.cos(k * p[:, 1])

    def gradient(p):
        return np.column_stack((-k * np.sin(k * p[:, 0]), -k * np.sin(k * p[:, 1])))

    return ClosedFormMode(
        domain=ModeDomain.RIGHT_ISOSCELES, label=ModeLabel.SYMMETRIC_COS_PAIR,
        eigenvalue=RIGHT_ISOSCELES_EIGENVALUE, evaluator=evaluator, gradient=gradient,
        triangle=IsoscelesSpec(math.pi / 2, 1.0).to_triangle(),
    )


# ---------------------------------------------------------------------------
# 试探函数
# ---------------------------------------------------------------------------

def cheng_trial_function(alpha: float, l: float = 1.0) -> ClosedFormMode:
    """
    超等边三角形 T(α) 上的 Cheng 双峰试探函数

    以 z± = (l cos(α/2), ±l sin(α/2)) 为圆心、D/2 为半径的两个圆盘模态
    ±J0(j01 |z − z±|/(D/2))，只在三角形内的两个扇形上非零。

    Args:
        alpha: 孔径，π/3 < α < π
        l: 腰长

    Returns:
        ClosedFormMode: is_eigenfunction=False，eigenvalue 为 Rayleigh 商 4 j01²/D²
    """
    if not (math.pi / 3 < alpha < math.pi):
        raise ApertureRangeError(f"Cheng 试探函数需要 π/3 < α < π: {alpha}")
    spec = IsoscelesSpec(alpha, l)
    h, s = spec.height, spec.half_base
    radius = s
    plus, minus = (h, s), (h, -s)
    # 每个峰是以 z± 为圆心、圆弧上为零的 Dirichlet 弧扇形模态
    bump_p = sector_dirichlet_arc_mode(radius, plus)
    bump_m = sector_dirichlet_arc_mode(radius, minus)
    ev_p, gr_p = bump_p.evaluator, bump_p.gradient
    ev_m, gr_m = bump_m.evaluator, bump_m.gradient

    def _inside(p, c):
        return np.hypot(p[:, 0] - c[0], p[:, 1] - c[1]) < radius

    def evaluator(p):
        return np.where(_inside(p, plus), ev_p(p), 0.0) - np.where(_inside(p, minus), ev_m(p), 0.0)

    def gradient(p):
        return (np.where(_inside(p, plus)[:, None], gr_p(p), 0.0)
                - np.where(_inside(p, minus)[:, None], gr_m(p), 0.0))

    half = alpha / 2
    sectors = (
        SectorRegion(plus, radius, -math.pi + half, -math.pi / 2),
        SectorRegion(minus, radius, math.pi / 2, math.pi - half),
    )
    return ClosedFormMode(
        domain=ModeDomain.DISK, label=ModeLabel.CHENG_TWO_BUMP, eigenvalue=bump_p.eigenvalue,
        evaluator=evaluator, gradient=gradient, triangle=spec.to_triangle(),
        sectors=sectors, is_eigenfunction=False, params={"alpha": alpha, "l": l},
    )


def cheng_arc_cells(alpha: float, l: float = 1.0):
    """返回一个掩码函数：单元是否跨越 Cheng 试探函数的圆弧"""
    spec = IsoscelesSpec(alpha, l)
    centers = np.array([[spec.height, spec.half_base], [spec.height, -spec.half_base]])
    radius = spec.half_base

    def mask(cells: np.ndarray) -> np.ndarray:
        samples = np.concatenate([cells, cells.mean(axis=1, keepdims=True)], axis=1)
        hit = np.zeros(cells.shape[0], dtype=bool)
        for c in centers:
            d = np.hypot(samples[..., 0] - c[0], samples[..., 1] - c[1])
            hit |= (d.min(axis=1) < radius) & (d.max(axis=1) > radius)
        return hit

    return mask


def cheng_rayleigh_on_triangle(alpha: float, l: float = 1.0, level: int = 16) -> Tuple[float, float]:
    """
    在 T(α) 上用局部加密的三角形公式计算 Cheng 试探函数的 Rayleigh 商

    Returns:
        (商, 误差估计)：误差估计取 level 与 2·level 两层结果之差
    """
    mode = cheng_trial_function(alpha, l)
    quotient, error = _quotient_with_estimate(mode.evaluator, mode.gradient, mode.triangle, level,
                                              refine_where=cheng_arc_cells(alpha, l))
    logger.debug(f"Cheng 试探函数 Rayleigh 商 α={alpha:.4f}: {quotient:.8f} ± {error:.2e}")
    return quotient, error


def transplanted_sector_function(alpha: float, l: float = 1.0) -> ClosedFormMode:
    """
    扇形模态 J0(j11 r/l) 经 σ⁻¹ 移植到 T(α)

    σ⁻¹ 把 (r, θ) 变为 (r cos θ / cos(α/2), θ)，因此移植后的函数只依赖 x：
    J0(j11 x / (l cos(α/2)))。均值为零，Rayleigh 商等于 j11² / (l² cos²(α/2))。
    """
    spec = IsoscelesSpec(alpha, l)
    k = J11 / spec.height

    def evaluator(p):
        return jv(0, k * p[:, 0])

    def gradient(p):
        return np.column_stack((-k * jv(1, k * p[:, 0]), np.zeros(p.shape[0])))

    return ClosedFormMode(
        domain=ModeDomain.ISOSCELES, label=ModeLabel.TRANSPLANTED_RADIAL,
        eigenvalue=(J11 / l) ** 2 / math.cos(alpha / 2) ** 2,
        evaluator=evaluator, gradient=gradient, triangle=spec.to_triangle(),
        is_eigenfunction=False, params={"alpha": alpha, "l": l},
    )


def interval_neumann_tone(length: float) -> float:
    """长度为 length 的区间的 Neumann 基频 (π/length)²"""
    if length <= 0:
        raise DomainError(f"区间长度必须为正: {length}")
    return (math.pi / length) ** 2


def stretched_quotient(ux2: float, uy2: float, norm2: float, t: float) -> float:
    """
    v(x, y) = u(x, y/t) 在 y 向拉伸 t 倍的区域上的 Rayleigh 商

    (∫u_x² + ∫u_y² / t²) / ∫u²，t > 1 时不超过 u 的 Rayleigh 商。
    """
    if t <= 0 or norm2 <= 0:
        raise DomainError(f"需要 t > 0 且 ∫u² > 0: t={t}, norm2={norm2}")
    return (ux2 + uy2 / (t * t)) / norm2
