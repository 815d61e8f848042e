"""
三角形值类型

功能说明：
- Triangle: 平面上三个顶点，构造时拒绝退化三角形
- IsoscelesSpec: 孔径 α + 腰长 l，在标准位置实现 T(α)（顶点在原点，关于正 x 轴对称）
- derived_scalars: 直径 D、周长 L、面积 A、边长平方和 S²
- classify: 亚等边 / 等边 / 超等边 / 其它

所有类型都是不可变值，可以在线程间自由共享。
"""

import json
import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from core.errors import ApertureRangeError, DegenerateTriangleError, DomainError

logger = logging.getLogger(__name__)

Point = Tuple[float, float]

ANGLE_TOL = 1e-9
DEGENERACY_TOL = 1e-14
# 喂给有限元的孔径范围
MESHABLE_APERTURE_MIN = 1e-4
MESHABLE_APERTURE_MAX = math.pi - 1e-4


@dataclass(frozen=True)
class Triangle:
    """平面三角形"""
    vertices: Tuple[Point, Point, Point]

    def __post_init__(self):
        if len(self.vertices) != 3:
            raise DomainError(f"三角形需要 3 个顶点，实际 {len(self.vertices)} 个")
        pts = tuple((float(p[0]), float(p[1])) for p in self.vertices)
        object.__setattr__(self, "vertices", pts)
        if not all(math.isfinite(c) for p in pts for c in p):
            raise DomainError(f"顶点坐标必须有限: {pts}")
        d = self.diameter
        if d == 0.0 or abs(self.signed_area) <= DEGENERACY_TOL * d * d:
            raise DegenerateTriangleError(
                f"退化三角形: 面积 {abs(self.signed_area):.3e}, 直径 {d:.3e}",
                details={"vertices": [list(p) for p in pts]},
            )

    @property
    def points(self) -> np.ndarray:
        return np.array(self.vertices, dtype=float)

    @property
    def signed_area(self) -> float:
        (x1, y1), (x2, y2), (x3, y3) = self.vertices
        return 0.5 * ((x2 - x1) * (y3 - y1) - (x3 - x1) * (y2 - y1))

    @property
    def area(self) -> float:
        return abs(self.signed_area)

    def edge_lengths(self) -> Tuple[float, float, float]:
        """按顶点顺序的边长 (|v1v2|, |v2v0|, |v0v1|)，第 i 条边与顶点 i 相对"""
        p = self.points
        return (
            float(np.hypot(*(p[2] - p[1]))),
            float(np.hypot(*(p[0] - p[2]))),
            float(np.hypot(*(p[1] - p[0]))),
        )

    def side_lengths(self) -> Tuple[float, float, float]:
        """降序排列的边长 l1 ≥ l2 ≥ l3"""
        return tuple(sorted(self.edge_lengths(), reverse=True))

    @property
    def diameter(self) -> float:
        return max(self.edge_lengths())

    @property
    def perimeter(self) -> float:
        return sum(self.edge_lengths())

    def angles(self) -> Tuple[float, float, float]:
        """各顶点处的内角（弧度），与 edge_lengths 的顺序对应"""
        a, b, c = self.edge_lengths()

        def _angle(opposite: float, s1: float, s2: float) -> float:
            cos_value = (s1 * s1 + s2 * s2 - opposite * opposite) / (2.0 * s1 * s2)
            return math.acos(min(1.0, max(-1.0, cos_value)))

        return (_angle(a, b, c), _angle(b, c, a), _angle(c, a, b))

    def counterclockwise(self) -> "Triangle":
        """返回逆时针顶点顺序的同一个三角形"""
        if self.signed_area > 0:
            return self
        v0, v1, v2 = self.vertices
        return Triangle((v0, v2, v1))

    def scaled(self, factor: float) -> "Triangle":
        """以原点为中心缩放"""
        return Triangle(tuple((factor * x, factor * y) for x, y in self.vertices))

    def stretched_y(self, factor: float) -> "Triangle":
        """沿 y 方向拉伸 factor 倍"""
        return Triangle(tuple((x, factor * y) for x, y in self.vertices))

    def to_list(self) -> List[List[float]]:
        return [list(p) for p in self.vertices]

    def to_json(self) -> str:
        """序列化为三个 [x, y] 组成的 JSON 数组"""
        return json.dumps(self.to_list())

    @classmethod
    def from_json(cls, text: str) -> "Triangle":
        data = json.loads(text)
        return cls.from_list(data)

    @classmethod
    def from_list(cls, data: Sequence[Sequence[float]]) -> "Triangle":
        if len(data) != 3 or any(len(p) != 2 for p in data):
            raise DomainError(f"三角形 JSON 必须是三个 [x, y]: {data}")
        return cls(tuple((float(p[0]), float(p[1])) for p in data))

    @classmethod
    def from_flat(cls, coords: Sequence[float]) -> "Triangle":
        """从 x0,y0,x1,y1,x2,y2 构造"""
        if len(coords) != 6:
            raise DomainError(f"需要 6 个坐标，实际 {len(coords)} 个")
        c = [float(v) for v in coords]
        return cls(((c[0], c[1]), (c[2], c[3]), (c[4], c[5])))


@dataclass(frozen=True)
class IsoscelesSpec:
    """
    等腰三角形 T(α)

    aperture 是两条腰之间的夹角，leg 是腰长。标准位置下
    T(α) = {0 < x < l cos(α/2), |y| < x tan(α/2)}。
    """
    aperture: float
    leg: float = 1.0

    def __post_init__(self):
        if not (0.0 < self.aperture < math.pi):
            raise ApertureRangeError(f"孔径必须在 (0, π) 内: {self.aperture}")
        if not (self.leg > 0.0) or not math.isfinite(self.leg):
            raise DomainError(f"腰长必须为正: {self.leg}")

    @property
    def half_angle(self) -> float:
        return 0.5 * self.aperture

    @property
    def height(self) -> float:
        """顶点到底边中点的距离 l cos(α/2)"""
        return self.leg * math.cos(self.half_angle)

    @property
    def half_base(self) -> float:
        return self.leg * math.sin(self.half_angle)

    @property
    def diameter(self) -> float:
        if self.aperture <= math.pi / 3:
            return self.leg
        return 2.0 * self.half_base

    def to_triangle(self) -> Triangle:
        """标准位置：顶点 (0,0)，底边两端 (h, -s), (h, s)，逆时针"""
        h, s = self.height, self.half_base
        return Triangle(((0.0, 0.0), (h, -s), (h, s)))

    def check_meshable(self) -> None:
        """有限元可接受的孔径范围 [1e-4, π - 1e-4]"""
        if not (MESHABLE_APERTURE_MIN <= self.aperture <= MESHABLE_APERTURE_MAX):
            raise ApertureRangeError(
                f"孔径 {self.aperture} 超出网格可处理范围 "
                f"[{MESHABLE_APERTURE_MIN}, {MESHABLE_APERTURE_MAX:.6f}]"
            )

    def with_leg(self, leg: float) -> "IsoscelesSpec":
        return IsoscelesSpec(self.aperture, leg)

    def to_dict(self) -> Dict[str, Any]:
        return {"aperture": self.aperture, "leg": self.leg}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "IsoscelesSpec":
        return cls(aperture=float(data["aperture"]), leg=float(data.get("leg", 1.0)))


Shape = Union[Triangle, IsoscelesSpec]


class TriangleClass(str, Enum):
    """三角形分类"""
    SUBEQUILATERAL = "subequilateral"
    EQUILATERAL = "equilateral"
    SUPEREQUILATERAL = "superequilateral"
    SCALENE_OR_OTHER = "scalene_or_other_isosceles"


@dataclass(frozen=True)
class TriangleScalars:
    """三角形的导出量"""
    D: float
    L: float
    A: float
    S2: float

    def to_dict(self) -> Dict[str, float]:
        return {"D": self.D, "L": self.L, "A": self.A, "S2": self.S2}


def as_triangle(shape: Shape) -> Triangle:
    """把 IsoscelesSpec 转为标准位置的 Triangle，Triangle 原样返回"""
    if isinstance(shape, IsoscelesSpec):
        return shape.to_triangle()
    return shape


def derived_scalars(shape: Shape) -> TriangleScalars:
    """
    计算 D, L, A, S²

    Args:
        shape: 三角形或等腰规格

    Returns:
        TriangleScalars: 直径、周长、面积（鞋带公式）、边长平方和
    """
    t = as_triangle(shape)
    edges = t.edge_lengths()
    return TriangleScalars(
        D=max(edges),
        L=sum(edges),
        A=t.area,
        S2=sum(e * e for e in edges),
    )


def isosceles_spec_of(t: Triangle, tol: float = ANGLE_TOL) -> Optional[IsoscelesSpec]:
    """
    若三角形是等腰的，返回对应的 IsoscelesSpec（孔径为两腰夹角），否则返回 None

    等边三角形返回孔径 π/3。
    """
    angles = t.angles()
    edges = t.edge_lengths()
    for apex in range(3):
        i, j = (apex + 1) % 3, (apex + 2) % 3
        if abs(angles[i] - angles[j]) <= tol:
            # 与底角相对的两条边就是两腰
            leg = 0.5 * (edges[i] + edges[j])
            return IsoscelesSpec(aperture=angles[apex], leg=leg)
    return None


def classify(shape: Shape) -> TriangleClass:
    """
    按定义分类，角度容差 1e-9 弧度，等边优先

    Args:
        shape: 三角形或等腰规格

    Returns:
        TriangleClass: 分类标签
    """
    t = as_triangle(shape)
    angles = t.angles()
    if all(abs(a - math.pi / 3) <= ANGLE_TOL for a in angles):
        return TriangleClass.EQUILATERAL

    spec = isosceles_spec_of(t)
    if spec is None:
        return TriangleClass.SCALENE_OR_OTHER
    if spec.aperture < math.pi / 3 - ANGLE_TOL:
        return TriangleClass.SUBEQUILATERAL
    if spec.aperture > math.pi / 3 + ANGLE_TOL:
        return TriangleClass.SUPEREQUILATERAL
    return TriangleClass.EQUILATERAL


def unit_equilateral() -> Triangle:
    """单位等边三角形 E: (0,0), (1,0), (1/2, √3/2)"""
    return Triangle(((0.0, 0.0), (1.0, 0.0), (0.5, math.sqrt(3.0) / 2.0)))
