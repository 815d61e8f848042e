"""
整体三角形上的 Neumann 谱
"""

import logging
from typing import List, Optional

from core.errors import DomainError
from core.fem.assembly import assemble
from core.fem.mesh import solver_mesh
from core.fem.schema import EigenSolution, SymmetryTag
from core.fem.solvers import solver_for
from core.fem.symmetry import antisymmetric_fraction, resolve_reflection_basis, tag_for_fraction
from core.geometry.triangle import Shape, derived_scalars
from core.settings import LabSettings

logger = logging.getLogger(__name__)

MAX_MODES = 20


def neumann_spectrum(shape: Shape, n: int, k: int = 1,
                     settings: Optional[LabSettings] = None) -> List[EigenSolution]:
    """
    前 k 个非零 Neumann 特征值及特征向量

    Args:
        shape: Triangle 或 IsoscelesSpec
        n: 网格层级
        k: 特征对个数，1 ≤ k ≤ 20，要求顶点数 ≥ 10k
        settings: 配置

    Returns:
        List[EigenSolution]: 特征值非降序；等腰网格上附带对称性标签
    """
    if not (1 <= k <= MAX_MODES):
        raise DomainError(f"k 必须在 [1, {MAX_MODES}] 内: {k}")
    mesh = solver_mesh(shape, n)
    if mesh.vertex_count < 10 * k:
        raise DomainError(f"网格顶点数 {mesh.vertex_count} 少于 10k = {10 * k}，请提高层级")

    matrices = assemble(mesh)
    scale = derived_scalars(shape).D
    solver = solver_for(mesh.vertex_count, settings)
    result = solver.solve(matrices, k, deflate_constants=True, length_scale=scale)

    vectors = resolve_reflection_basis(mesh, matrices, result.eigenvalues, result.eigenvectors)
    solutions = []
    for i in range(result.eigenvalues.size):
        u = vectors[:, i]
        if mesh.reflection is not None:
            tag = tag_for_fraction(antisymmetric_fraction(mesh, matrices.mass, u))
        else:
            tag = SymmetryTag.NOT_APPLICABLE
        solutions.append(EigenSolution(
            eigenvalue=float(result.eigenvalues[i]),
            coefficients=u,
            mesh_level=n,
            symmetry=tag,
            residual=float(result.residuals[i]),
            backend=result.backend,
            mesh=mesh,
        ))
    logger.info(f"n={n}, {mesh.vertex_count} 个顶点, μ = {[round(s.eigenvalue, 6) for s in solutions]}")
    return solutions
