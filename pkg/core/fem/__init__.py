"""
有限元模块

结构化网格、分片线性组装、广义特征值求解、对称约化求解、Richardson 外推和离散 Rayleigh 商。
"""

from .assembly import FemMatrices, assemble, element_geometry, element_gradients, gradient_integrals
from .extrapolation import check_levels, extrapolate_tone, richardson
from .mesh import Mesh, barycentric_mesh, build_mesh, isosceles_mesh, solver_mesh
from .parallel import ordered_map
from .rayleigh import kappa, rayleigh_quotient_of
from .schema import EigenSolution, ExtrapolatedTone, SymmetryClass, SymmetryTag
from .spectrum import neumann_spectrum
from .symmetry import SymmetryVerdict, classify_mode_symmetry, symmetry_reduced_tone

__all__ = [
    "FemMatrices",
    "assemble",
    "element_geometry",
    "element_gradients",
    "gradient_integrals",
    "check_levels",
    "extrapolate_tone",
    "richardson",
    "ordered_map",
    "Mesh",
    "barycentric_mesh",
    "build_mesh",
    "isosceles_mesh",
    "solver_mesh",
    "kappa",
    "rayleigh_quotient_of",
    "EigenSolution",
    "ExtrapolatedTone",
    "SymmetryClass",
    "SymmetryTag",
    "neumann_spectrum",
    "SymmetryVerdict",
    "classify_mode_symmetry",
    "symmetry_reduced_tone",
]
