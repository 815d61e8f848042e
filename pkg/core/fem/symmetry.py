"""
对称约化求解与模态对称性分类

等腰三角形的本征函数可以取为关于对称轴对称或反对称：
- 对称类：在半三角形 U 上解 Neumann 问题（轴上自然边界条件），剔除常数
- 反对称类：在 U 上去掉轴线节点（轴上取零）
半网格的解按反射置换延拓回整个网格。
"""

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.linalg import eigh

from core.errors import MeshCompatibilityError
from core.fem.assembly import FemMatrices, assemble
from core.fem.mesh import Mesh, isosceles_mesh
from core.fem.schema import EigenSolution, SymmetryClass, SymmetryTag
from core.fem.solvers import solver_for
from core.geometry.triangle import IsoscelesSpec
from core.settings import LabSettings

logger = logging.getLogger(__name__)

SYMMETRIC_THRESHOLD = 0.01
ANTISYMMETRIC_THRESHOLD = 0.99


@dataclass(frozen=True)
class SymmetryVerdict:
    """反对称部分在 M 范数下所占的比例及对应标签"""
    fraction_antisymmetric: float
    symmetry: SymmetryTag

    def to_dict(self):
        return {"fraction_antisymmetric": self.fraction_antisymmetric,
                "symmetry": self.symmetry.value}


def tag_for_fraction(fraction: float) -> SymmetryTag:
    if fraction < SYMMETRIC_THRESHOLD:
        return SymmetryTag.SYMMETRIC
    if fraction > ANTISYMMETRIC_THRESHOLD:
        return SymmetryTag.ANTISYMMETRIC
    return SymmetryTag.NONE


def antisymmetric_fraction(mesh: Mesh, mass, values: np.ndarray) -> float:
    """‖(u − uʳ)/2‖²_M / (‖(u + uʳ)/2‖²_M + ‖(u − uʳ)/2‖²_M)"""
    if mesh.reflection is None:
        raise MeshCompatibilityError("网格没有反射置换，无法做对称性分类")
    u = np.asarray(values, dtype=float)
    ur = u[mesh.reflection]
    sym, anti = 0.5 * (u + ur), 0.5 * (u - ur)
    s2 = float(sym @ (mass @ sym))
    a2 = float(anti @ (mass @ anti))
    total = s2 + a2
    return 0.0 if total == 0.0 else a2 / total


def classify_mode_symmetry(spec: IsoscelesSpec, sol: EigenSolution,
                           mass=None) -> SymmetryVerdict:
    """
    对等腰三角形上的整体解做对称性分类

    Args:
        spec: 等腰规格
        sol: 整体网格上的特征解
        mass: 可选的质量矩阵（避免重复组装）

    Returns:
        SymmetryVerdict: 反对称比例 < 0.01 为 symmetric，> 0.99 为 antisymmetric，否则 none

    Raises:
        MeshCompatibilityError: 网格不是反射对称的
    """
    mesh = sol.mesh if sol.mesh is not None else isosceles_mesh(spec, sol.mesh_level)
    if mesh.reflection is None or mesh.vertex_count != sol.coefficients.size:
        raise MeshCompatibilityError(
            f"解的系数个数 {sol.coefficients.size} 与反射对称网格不匹配"
        )
    if mass is None:
        mass = assemble(mesh).mass
    fraction = antisymmetric_fraction(mesh, mass, sol.coefficients)
    return SymmetryVerdict(fraction_antisymmetric=fraction, symmetry=tag_for_fraction(fraction))


def resolve_reflection_basis(mesh: Mesh, matrices: FemMatrices, values: np.ndarray,
                             vectors: np.ndarray, rel_tol: float = 1e-6) -> np.ndarray:
    """
    把（近似）重特征值对应的特征向量旋转成纯对称 / 纯反对称的组合

    对每个特征值簇 V，对角化 Vᵀ M V[reflection]（特征值为 ±1）。
    """
    if mesh.reflection is None:
        return vectors
    vectors = vectors.copy()
    start = 0
    while start < values.size:
        stop = start + 1
        while stop < values.size and abs(values[stop] - values[start]) <= rel_tol * abs(values[start]):
            stop += 1
        if stop - start > 1:
            block = vectors[:, start:stop]
            reflected = matrices.mass @ block[mesh.reflection]
            r = 0.5 * (block.T @ reflected + (block.T @ reflected).T)
            _, q = eigh(r)
            vectors[:, start:stop] = block @ q
            logger.debug(f"特征值簇 [{start}, {stop}) 已按反射对称性重新组合")
        start = stop
    return vectors


def symmetry_reduced_tone(spec: IsoscelesSpec, n: int, symmetry_class,
                          settings: Optional[LabSettings] = None) -> EigenSolution:
    """
    在半三角形上求对称类（μ_s）或反对称类（μ_a）的最小特征值

    Args:
        spec: 等腰规格
        n: 网格层级
        symmetry_class: "symmetric" 或 "antisymmetric"
        settings: 配置

    Returns:
        EigenSolution: 系数已延拓到整个网格，mesh 为整体网格
    """
    cls = SymmetryClass(symmetry_class)
    mesh = isosceles_mesh(spec, n)
    half = mesh.half_mesh()
    matrices = assemble(half)
    hv = half.vertex_count

    if cls == SymmetryClass.SYMMETRIC:
        solver = solver_for(hv, settings)
        result = solver.solve(matrices, 1, deflate_constants=True, length_scale=spec.diameter)
        u_half = result.eigenvectors[:, 0]
        sign = 1.0
        tag = SymmetryTag.SYMMETRIC
    else:
        free = np.setdiff1d(np.arange(hv), half.axis_vertices)
        solver = solver_for(free.size, settings)
        result = solver.solve(matrices.restrict(free), 1, deflate_constants=False,
                              length_scale=spec.diameter)
        u_half = np.zeros(hv)
        u_half[free] = result.eigenvectors[:, 0]
        sign = -1.0
        tag = SymmetryTag.ANTISYMMETRIC

    full = np.zeros(mesh.vertex_count)
    full[:hv] = u_half
    full[mesh.reflection[:hv]] = sign * u_half
    full /= np.sqrt(2.0)

    eigenvalue = float(result.eigenvalues[0])
    logger.debug(f"T({spec.aperture:.4f}) {cls.value} n={n}: μ={eigenvalue:.8f}")
    return EigenSolution(
        eigenvalue=eigenvalue,
        coefficients=full,
        mesh_level=n,
        symmetry=tag,
        residual=float(result.residuals[0]),
        backend=result.backend,
        mesh=mesh,
    )
