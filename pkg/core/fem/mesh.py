"""
结构化三角形网格

两种布局：
- barycentric: 三角形 t 的重心细分，n² 个与 t/n 仿射同构的单元，(n+1)(n+2)/2 个顶点
- split: 沿顶点到对边的高线切成两个直角三角形，各自重心细分后沿高线拼接，
  2n² 个单元，(n+1)² 个顶点。等腰三角形的高线就是对称轴，上半部分顶点在前，
  反射是精确的顶点置换，上半部分本身就是半三角形 U。

钝角三角形默认用 split 布局（沿钝角顶点的高线），避免出现接近 π 的单元内角。
"""

import logging
import math
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

from core.errors import DomainError, MeshCompatibilityError
from core.geometry.triangle import IsoscelesSpec, Shape, Triangle

logger = logging.getLogger(__name__)

MAX_LEVEL = 512

LAYOUT_BARYCENTRIC = "barycentric"
LAYOUT_SPLIT = "split"


@dataclass
class Mesh:
    """三角形网格，单元顶点逆时针排列"""
    vertices: np.ndarray
    elements: np.ndarray
    refinement_level: int
    axis_vertices: np.ndarray = field(default_factory=lambda: np.zeros(0, dtype=int))
    reflection: Optional[np.ndarray] = None
    half_vertex_count: Optional[int] = None
    half_element_count: Optional[int] = None
    layout: str = LAYOUT_BARYCENTRIC
    source_area: float = float("nan")

    @property
    def vertex_count(self) -> int:
        return int(self.vertices.shape[0])

    @property
    def element_count(self) -> int:
        return int(self.elements.shape[0])

    def signed_areas(self) -> np.ndarray:
        v = self.vertices[self.elements]
        e1 = v[:, 1] - v[:, 0]
        e2 = v[:, 2] - v[:, 0]
        return 0.5 * (e1[:, 0] * e2[:, 1] - e1[:, 1] * e2[:, 0])

    def total_area(self) -> float:
        return float(self.signed_areas().sum())

    def edge_counts(self) -> dict:
        """无向边 -> 出现次数"""
        counts = {}
        for a, b, c in self.elements:
            for p, q in ((a, b), (b, c), (c, a)):
                key = (min(p, q), max(p, q))
                counts[key] = counts.get(key, 0) + 1
        return counts

    def check(self, rel_tol: float = 1e-12) -> None:
        """
        检查单元面积为正、网格协调、面积之和等于原三角形

        Raises:
            MeshCompatibilityError: 任一条件不满足
        """
        if np.any(self.signed_areas() <= 0):
            raise MeshCompatibilityError("存在非正面积的单元")
        if any(count > 2 for count in self.edge_counts().values()):
            raise MeshCompatibilityError("存在被两个以上单元共享的边")
        if math.isfinite(self.source_area):
            if abs(self.total_area() - self.source_area) > rel_tol * self.source_area:
                raise MeshCompatibilityError(
                    f"单元面积之和 {self.total_area()} 与三角形面积 {self.source_area} 不符"
                )

    @property
    def has_reflection(self) -> bool:
        return self.reflection is not None

    def half_mesh(self) -> "Mesh":
        """对称轴一侧（y ≥ 0）的半网格，顶点编号与整体网格的前 half_vertex_count 个一致"""
        if self.half_vertex_count is None or not self.has_reflection:
            raise MeshCompatibilityError("该网格没有对称轴，无法取半网格")
        hv, he = self.half_vertex_count, self.half_element_count
        return Mesh(
            vertices=self.vertices[:hv].copy(),
            elements=self.elements[:he].copy(),
            refinement_level=self.refinement_level,
            axis_vertices=self.axis_vertices.copy(),
            layout=LAYOUT_BARYCENTRIC,
            source_area=0.5 * self.source_area,
        )

    def to_ascii(self) -> str:
        """导出为纯文本顶点/单元列表"""
        lines: List[str] = [
            f"# tritone mesh layout={self.layout} level={self.refinement_level}",
            f"vertices {self.vertex_count}",
        ]
        lines.extend(f"{i} {x:.17g} {y:.17g}" for i, (x, y) in enumerate(self.vertices))
        lines.append(f"elements {self.element_count}")
        lines.extend(f"{i} {a} {b} {c}" for i, (a, b, c) in enumerate(self.elements))
        if self.axis_vertices.size:
            lines.append("axis " + " ".join(str(int(i)) for i in self.axis_vertices))
        return "\n".join(lines) + "\n"


def _barycentric_grid(p0, p1, p2, n: int) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    三角形 (p0, p1, p2) 的重心细分

    Returns:
        (coords, elements, index): index[i, j] 是节点 p0 + i/n (p1-p0) + j/n (p2-p0) 的编号，无效位置为 -1
    """
    p0, p1, p2 = (np.asarray(p, dtype=float) for p in (p0, p1, p2))
    ii, jj = np.meshgrid(np.arange(n + 1), np.arange(n + 1), indexing="ij")
    valid = ii + jj <= n
    index = np.full((n + 1, n + 1), -1, dtype=np.int64)
    index[valid] = np.arange(int(valid.sum()))
    i, j = ii[valid], jj[valid]
    coords = p0 + np.outer(i / n, p1 - p0) + np.outer(j / n, p2 - p0)

    ui, uj = ii[ii + jj <= n - 1], jj[ii + jj <= n - 1]
    up = np.column_stack((index[ui, uj], index[ui + 1, uj], index[ui, uj + 1]))
    di, dj = ii[ii + jj <= n - 2], jj[ii + jj <= n - 2]
    down = np.column_stack((index[di + 1, dj], index[di + 1, dj + 1], index[di, dj + 1]))
    return coords, np.vstack((up, down)), index


def _check_level(n: int) -> None:
    if not (1 <= n <= MAX_LEVEL):
        raise DomainError(f"网格层级必须在 [1, {MAX_LEVEL}] 内: {n}")


def barycentric_mesh(t: Triangle, n: int) -> Mesh:
    """重心细分网格"""
    _check_level(n)
    t = t.counterclockwise()
    p = t.points
    coords, elements, _ = _barycentric_grid(p[0], p[1], p[2], n)
    return Mesh(vertices=coords, elements=elements, refinement_level=n,
                layout=LAYOUT_BARYCENTRIC, source_area=t.area)


def split_mesh(apex, foot, upper, lower, n: int, mirrored: bool = False,
               source_area: float = float("nan")) -> Mesh:
    """
    沿 apex-foot 拼接的两半网格

    上半 (apex, foot, upper) 和下半 (apex, foot, lower) 各自重心细分，共享 j=0 的轴线节点。
    mirrored 为 True 时两半互为镜像，记录反射置换。
    """
    _check_level(n)
    up_coords, up_elems, up_index = _barycentric_grid(apex, foot, upper, n)
    lo_coords, lo_elems, lo_index = _barycentric_grid(apex, foot, lower, n)

    hv = up_coords.shape[0]
    # 下半部分：轴线节点 (j=0) 复用上半的编号，其余接在后面
    lower_map = np.empty(lo_coords.shape[0], dtype=np.int64)
    on_axis = np.zeros(lo_coords.shape[0], dtype=bool)
    on_axis[lo_index[:, 0]] = True
    lower_map[lo_index[:, 0]] = up_index[:, 0]
    extra = np.flatnonzero(~on_axis)
    lower_map[extra] = hv + np.arange(extra.size)

    vertices = np.vstack((up_coords, lo_coords[extra]))
    upper_elements = up_elems
    lower_elements = lower_map[lo_elems]

    def _orient(elems: np.ndarray) -> np.ndarray:
        v = vertices[elems]
        e1, e2 = v[:, 1] - v[:, 0], v[:, 2] - v[:, 0]
        negative = e1[:, 0] * e2[:, 1] - e1[:, 1] * e2[:, 0] < 0
        elems = elems.copy()
        elems[negative] = elems[negative][:, [0, 2, 1]]
        return elems

    elements = np.vstack((_orient(upper_elements), _orient(lower_elements)))
    axis = up_index[:, 0]

    reflection = None
    if mirrored:
        # 上半 (i, j) ↔ 下半 (i, j)
        reflection = np.arange(vertices.shape[0])
        valid = up_index >= 0
        up_ids = up_index[valid]
        lo_ids = lower_map[lo_index[valid]]
        reflection[up_ids] = lo_ids
        reflection[lo_ids] = up_ids

    return Mesh(
        vertices=vertices,
        elements=elements,
        refinement_level=n,
        axis_vertices=np.sort(axis),
        reflection=reflection,
        half_vertex_count=hv,
        half_element_count=int(upper_elements.shape[0]),
        layout=LAYOUT_SPLIT,
        source_area=source_area,
    )


def isosceles_mesh(spec: IsoscelesSpec, n: int) -> Mesh:
    """标准位置 T(α) 的对称拼接网格"""
    spec.check_meshable()
    h, s = spec.height, spec.half_base
    return split_mesh((0.0, 0.0), (h, 0.0), (h, s), (h, -s), n, mirrored=True,
                      source_area=h * s)


def obtuse_split_mesh(t: Triangle, n: int) -> Mesh:
    """沿最大角顶点的高线拼接的网格（保持原坐标系）"""
    angles = t.angles()
    k = int(np.argmax(angles))
    p = t.points
    apex, a, b = p[k], p[(k + 1) % 3], p[(k + 2) % 3]
    d = b - a
    foot = a + d * float((apex - a) @ d) / float(d @ d)
    return split_mesh(apex, foot, b, a, n, mirrored=False, source_area=t.area)


def build_mesh(shape: Shape, n: int, layout: Optional[str] = None) -> Mesh:
    """
    构造结构化网格

    Args:
        shape: Triangle 或 IsoscelesSpec
        n: 细分层级，1 ≤ n ≤ 512
        layout: None 时 IsoscelesSpec 用 split、Triangle 用 barycentric

    Returns:
        Mesh: 网格
    """
    if isinstance(shape, IsoscelesSpec):
        if layout in (None, LAYOUT_SPLIT):
            return isosceles_mesh(shape, n)
        shape.check_meshable()
        return barycentric_mesh(shape.to_triangle(), n)

    if layout in (None, LAYOUT_BARYCENTRIC):
        return barycentric_mesh(shape, n)
    if layout == LAYOUT_SPLIT:
        return obtuse_split_mesh(shape, n)
    raise DomainError(f"未知网格布局: {layout}")


def solver_mesh(shape: Shape, n: int) -> Mesh:
    """求解用的网格：等腰规格和钝角三角形用 split 布局，其余用重心细分"""
    if isinstance(shape, IsoscelesSpec):
        return isosceles_mesh(shape, n)
    if max(shape.angles()) > math.pi / 2 + 1e-12:
        return obtuse_split_mesh(shape, n)
    return barycentric_mesh(shape, n)
