"""
测试有限元模块：网格、组装、求解、对称约化、外推与并发调度
"""

import math
import unittest

import numpy as np

from core.errors import DomainError, MeshCompatibilityError, SettingsError
from core.fem import (
    ExtrapolatedTone,
    SymmetryTag,
    assemble,
    barycentric_mesh,
    build_mesh,
    check_levels,
    classify_mode_symmetry,
    extrapolate_tone,
    gradient_integrals,
    isosceles_mesh,
    kappa,
    neumann_spectrum,
    ordered_map,
    rayleigh_quotient_of,
    richardson,
    solver_mesh,
    symmetry_reduced_tone,
)
from core.fem.solvers import create_solver, get_available_solver_types
from core.geometry import IsoscelesSpec, Triangle, unit_equilateral
from core.settings import LabSettings

EQUILATERAL_TONE = 16.0 * math.pi ** 2 / 9.0


class TestMesh(unittest.TestCase):
    """测试结构化网格"""

    def test_barycentric_counts(self):
        """测试重心细分的顶点数和单元数"""
        n = 6
        mesh = barycentric_mesh(unit_equilateral(), n)
        self.assertEqual(mesh.vertex_count, (n + 1) * (n + 2) // 2)
        self.assertEqual(mesh.element_count, n * n)
        mesh.check()

    def test_split_counts_and_reflection(self):
        """测试等腰拼接网格：顶点数、单元数和反射置换"""
        n = 5
        mesh = isosceles_mesh(IsoscelesSpec(0.7, 1.0), n)
        self.assertEqual(mesh.vertex_count, (n + 1) ** 2)
        self.assertEqual(mesh.element_count, 2 * n * n)
        mesh.check()
        r = mesh.reflection
        np.testing.assert_array_equal(r[r], np.arange(mesh.vertex_count))
        np.testing.assert_allclose(mesh.vertices[r], mesh.vertices * np.array([1.0, -1.0]), atol=1e-14)
        np.testing.assert_allclose(mesh.vertices[mesh.axis_vertices, 1], 0.0, atol=1e-15)

    def test_half_mesh(self):
        """测试半网格是上半部分的重心细分"""
        n = 4
        mesh = isosceles_mesh(IsoscelesSpec(1.5, 1.0), n)
        half = mesh.half_mesh()
        self.assertEqual(half.vertex_count, (n + 1) * (n + 2) // 2)
        self.assertAlmostEqual(half.total_area(), 0.5 * mesh.total_area(), places=14)
        self.assertTrue(np.all(half.vertices[:, 1] >= -1e-15))

    def test_half_mesh_requires_reflection(self):
        """测试没有对称轴的网格不能取半网格"""
        mesh = barycentric_mesh(Triangle(((0.0, 0.0), (1.0, 0.0), (0.3, 0.8))), 3)
        with self.assertRaises(MeshCompatibilityError):
            mesh.half_mesh()

    def test_level_range(self):
        """测试层级范围"""
        with self.assertRaises(DomainError):
            barycentric_mesh(unit_equilateral(), 0)

    def test_obtuse_triangle_uses_split(self):
        """测试钝角三角形沿钝角顶点的高线拼接"""
        t = Triangle(((0.0, 0.0), (2.0, 0.0), (0.7, 0.3)))
        mesh = solver_mesh(t, 4)
        self.assertEqual(mesh.layout, "split")
        self.assertIsNone(mesh.reflection)
        mesh.check()
        self.assertEqual(build_mesh(t, 4).layout, "barycentric")

    def test_ascii_export(self):
        """测试文本导出"""
        text = isosceles_mesh(IsoscelesSpec(1.0, 1.0), 2).to_ascii()
        lines = text.splitlines()
        self.assertTrue(lines[0].startswith("# tritone mesh layout=split level=2"))
        self.assertIn("vertices 9", lines)
        self.assertIn("elements 8", lines)
        self.assertTrue(lines[-1].startswith("axis "))


class TestAssembly(unittest.TestCase):
    """测试组装和 Rayleigh 商"""

    def setUp(self):
        self.spec = IsoscelesSpec(0.9, 1.0)
        self.mesh = isosceles_mesh(self.spec, 8)
        self.matrices = assemble(self.mesh)

    def test_constants_in_kernel(self):
        """测试 K 的核包含常数，M 的元素和等于面积"""
        ones = np.ones(self.mesh.vertex_count)
        np.testing.assert_allclose(self.matrices.stiffness @ ones, 0.0, atol=1e-12)
        self.assertAlmostEqual(float(ones @ (self.matrices.mass @ ones)),
                               self.spec.to_triangle().area, places=13)

    def test_gradient_integrals_of_linear(self):
        """测试线性函数的梯度积分精确"""
        area = self.spec.to_triangle().area
        wx2, wy2 = gradient_integrals(self.mesh, self.mesh.vertices[:, 0])
        self.assertAlmostEqual(wx2, area, places=13)
        self.assertAlmostEqual(wy2, 0.0, places=13)
        self.assertAlmostEqual(kappa(self.mesh, lambda p: p[:, 1]), 1.0, places=13)

    def test_quotient_ignores_constants(self):
        """测试 Rayleigh 商与加常数无关"""
        rng = np.random.default_rng(3)
        u = rng.standard_normal(self.mesh.vertex_count)
        self.assertAlmostEqual(rayleigh_quotient_of(self.mesh, u),
                               rayleigh_quotient_of(self.mesh, u + 5.0), places=9)

    def test_constant_has_no_quotient(self):
        """测试常数函数报错"""
        with self.assertRaises(DomainError):
            rayleigh_quotient_of(self.mesh, np.ones(self.mesh.vertex_count))

    def test_wrong_length(self):
        """测试节点值个数不符"""
        with self.assertRaises(DomainError):
            rayleigh_quotient_of(self.mesh, np.ones(3))

    def test_discrete_rayleigh_principle(self):
        """测试任意函数的 Rayleigh 商不小于离散 μ₁"""
        mu1 = neumann_spectrum(self.spec, 8, 1, LabSettings())[0].eigenvalue
        rng = np.random.default_rng(0)
        for _ in range(20):
            self.assertGreaterEqual(rayleigh_quotient_of(self.mesh, rng.standard_normal(self.mesh.vertex_count),
                                                         self.matrices), mu1 * (1 - 1e-12))


class TestSpectrum(unittest.TestCase):
    """测试整体 Neumann 谱"""

    def setUp(self):
        self.settings = LabSettings()

    def test_right_isosceles(self):
        """测试直角等腰三角形：μ₁ = π²，反对称，离散值是上界"""
        mode = neumann_spectrum(IsoscelesSpec(math.pi / 2, 1.0), 16, 1, self.settings)[0]
        self.assertGreaterEqual(mode.eigenvalue, math.pi ** 2 * (1 - 1e-12))
        self.assertLess(mode.eigenvalue, math.pi ** 2 * 1.02)
        self.assertEqual(mode.symmetry, SymmetryTag.ANTISYMMETRIC)

    def test_equilateral_pair(self):
        """测试等边三角形的二重特征值被分成一个对称一个反对称"""
        modes = neumann_spectrum(IsoscelesSpec(math.pi / 3, 1.0), 16, 3, self.settings)
        mu = [m.eigenvalue for m in modes]
        self.assertEqual(mu, sorted(mu))
        for value in mu[:2]:
            self.assertGreaterEqual(value, EQUILATERAL_TONE * (1 - 1e-12))
            self.assertLess(value, EQUILATERAL_TONE * 1.03)
        self.assertGreater(mu[2] / mu[0], 2.0)
        self.assertEqual({m.symmetry for m in modes[:2]},
                         {SymmetryTag.SYMMETRIC, SymmetryTag.ANTISYMMETRIC})

    def test_scalene(self):
        """测试一般三角形没有对称性标签，特征向量 M 正交归一且均值为零"""
        t = Triangle(((0.0, 0.0), (1.0, 0.0), (0.3, 0.8)))
        modes = neumann_spectrum(t, 8, 2, self.settings)
        mesh = solver_mesh(t, 8)
        mass = assemble(mesh).mass
        for m in modes:
            self.assertEqual(m.symmetry, SymmetryTag.NOT_APPLICABLE)
            u = m.coefficients
            self.assertAlmostEqual(float(u @ (mass @ u)), 1.0, places=10)
            self.assertAlmostEqual(float((mass @ np.ones_like(u)) @ u), 0.0, places=10)

    def test_invalid_k(self):
        """测试 k 的范围和网格规模要求"""
        spec = IsoscelesSpec(1.0, 1.0)
        with self.assertRaises(DomainError):
            neumann_spectrum(spec, 8, 0, self.settings)
        with self.assertRaises(DomainError):
            neumann_spectrum(spec, 1, 1, self.settings)

    def test_scale_invariance(self):
        """测试 μ₁ 按 1/l² 缩放"""
        a = neumann_spectrum(IsoscelesSpec(0.8, 1.0), 8, 1, self.settings)[0].eigenvalue
        b = neumann_spectrum(IsoscelesSpec(0.8, 2.0), 8, 1, self.settings)[0].eigenvalue
        self.assertAlmostEqual(a / b, 4.0, places=8)


class TestSymmetryReduction(unittest.TestCase):
    """测试对称约化求解"""

    def setUp(self):
        self.settings = LabSettings()

    def test_classes_reproduce_full_spectrum(self):
        """测试 min(μ_s, μ_a) 等于同一网格上的整体 μ₁"""
        for aperture in (0.5, 2.0):
            spec = IsoscelesSpec(aperture, 1.0)
            full = neumann_spectrum(spec, 12, 1, self.settings)[0].eigenvalue
            sym = symmetry_reduced_tone(spec, 12, "symmetric", self.settings)
            anti = symmetry_reduced_tone(spec, 12, "antisymmetric", self.settings)
            self.assertLess(abs(min(sym.eigenvalue, anti.eigenvalue) - full) / full, 1e-7)

    def test_symmetry_transition(self):
        """测试亚等边为对称、超等边为反对称"""
        sub = IsoscelesSpec(0.5, 1.0)
        sup = IsoscelesSpec(2.0, 1.0)
        self.assertLess(symmetry_reduced_tone(sub, 12, "symmetric", self.settings).eigenvalue,
                        symmetry_reduced_tone(sub, 12, "antisymmetric", self.settings).eigenvalue)
        self.assertGreater(symmetry_reduced_tone(sup, 12, "symmetric", self.settings).eigenvalue,
                           symmetry_reduced_tone(sup, 12, "antisymmetric", self.settings).eigenvalue)

    def test_extension_is_exact(self):
        """测试延拓到整体网格后的对称性"""
        spec = IsoscelesSpec(1.2, 1.0)
        for cls, tag in (("symmetric", SymmetryTag.SYMMETRIC), ("antisymmetric", SymmetryTag.ANTISYMMETRIC)):
            sol = symmetry_reduced_tone(spec, 8, cls, self.settings)
            self.assertEqual(sol.symmetry, tag)
            self.assertEqual(sol.coefficients.size, sol.mesh.vertex_count)
            self.assertEqual(classify_mode_symmetry(spec, sol).symmetry, tag)
            self.assertAlmostEqual(rayleigh_quotient_of(sol.mesh, sol.coefficients), sol.eigenvalue, places=7)

    def test_unknown_class(self):
        """测试未知的对称类"""
        with self.assertRaises(ValueError):
            symmetry_reduced_tone(IsoscelesSpec(1.0, 1.0), 4, "chiral", self.settings)


class TestExtrapolation(unittest.TestCase):
    """测试 Richardson 外推"""

    def setUp(self):
        self.settings = LabSettings()

    def test_second_order_sequence(self):
        """测试 μ(n) = 10 + 5/n² 外推到 10，观测阶为 2"""
        tone = extrapolate_tone(IsoscelesSpec(1.0, 1.0), levels=[8, 16, 32], settings=self.settings,
                                tone_at=lambda n: 10.0 + 5.0 / n ** 2)
        self.assertAlmostEqual(tone.value, 10.0, places=12)
        self.assertAlmostEqual(tone.observed_order, 2.0, places=10)
        self.assertFalse(tone.order_flagged)
        self.assertAlmostEqual(tone.error_estimate, 5.0 / 1024, places=14)
        self.assertEqual(tone.levels_used, [8, 16, 32])

    def test_first_order_is_flagged(self):
        """测试一阶收敛被标记"""
        tone = richardson([10.0 + 1.0 / n for n in (8, 16, 32)], [8, 16, 32])
        self.assertAlmostEqual(tone.observed_order, 1.0, places=10)
        self.assertTrue(tone.order_flagged)

    def test_level_checks(self):
        """测试层级必须至少三层且比值为 2"""
        with self.assertRaises(DomainError):
            check_levels([8, 16])
        with self.assertRaises(DomainError):
            check_levels([8, 16, 30])

    def test_budget_levels(self):
        """测试未给出层级时使用预算"""
        seen = []
        extrapolate_tone(IsoscelesSpec(1.0, 1.0), settings=self.settings, budget="fast",
                         tone_at=lambda n: seen.append(n) or 1.0 + 1.0 / n ** 2)
        self.assertEqual(seen, self.settings.levels_for("fast"))

    def test_floor_fallback(self):
        """测试低于孔径下限时改报夹逼区间"""
        tone = extrapolate_tone(IsoscelesSpec(0.03, 1.0), settings=self.settings,
                                tone_at=lambda n: self.fail("不应求解"))
        self.assertIsNotNone(tone.fallback)
        self.assertEqual(tone.levels_used, [])
        self.assertLess(tone.fallback["lower"], tone.value)
        self.assertLess(tone.value, tone.fallback["upper"])

    def test_antisymmetric_below_floor_still_solved(self):
        """测试反对称类在下限以下仍然求解"""
        tone = extrapolate_tone(IsoscelesSpec(0.03, 1.0), levels=[4, 8, 16], symmetry_class="antisymmetric",
                                settings=self.settings, tone_at=lambda n: 100.0 + 1.0 / n ** 2)
        self.assertIsNone(tone.fallback)
        self.assertEqual(tone.symmetry_class, "antisymmetric")

    def test_class_requires_isosceles(self):
        """测试对称类求解需要等腰输入"""
        with self.assertRaises(DomainError):
            extrapolate_tone(unit_equilateral(), symmetry_class="symmetric", settings=self.settings)

    def test_real_extrapolation(self):
        """测试外推后的等边三角形基频"""
        tone = extrapolate_tone(IsoscelesSpec(math.pi / 3, 1.0), levels=[8, 16, 32], settings=self.settings)
        self.assertLess(abs(tone.value - EQUILATERAL_TONE) / EQUILATERAL_TONE, 2e-3)
        self.assertLess(tone.value, tone.raw_values[-1])

    def test_stretch_lowers_tone(self):
        """测试沿 y 方向拉伸后外推基频下降"""
        t = Triangle(((0.0, 0.0), (1.0, 0.0), (0.3, 0.8)))
        base = extrapolate_tone(t, levels=[8, 16, 32], settings=self.settings)
        for factor in (1.1, 1.2):
            stretched = extrapolate_tone(t.stretched_y(factor), levels=[8, 16, 32], settings=self.settings)
            slack = self.settings.slack_factor * (base.error_estimate + stretched.error_estimate)
            self.assertLess(stretched.value, base.value - slack)

    def test_tone_dict_round_trip(self):
        """测试 ExtrapolatedTone 的序列化（NaN 阶写为 None）"""
        tone = ExtrapolatedTone(value=1.5, error_estimate=0.1, levels_used=[], observed_order=float("nan"),
                                fallback={"lower": 1.0, "upper": 2.0})
        data = tone.to_dict()
        self.assertIsNone(data["observed_order"])
        restored = ExtrapolatedTone.from_dict(data)
        self.assertTrue(math.isnan(restored.observed_order))
        self.assertEqual(restored.fallback, {"lower": 1.0, "upper": 2.0})
        scaled = tone.scaled(4.0)
        self.assertEqual(scaled.value, 6.0)
        self.assertEqual(scaled.fallback, {"lower": 4.0, "upper": 8.0})


class TestParallel(unittest.TestCase):
    """测试并发调度"""

    def test_order_preserved(self):
        """测试结果按输入顺序返回"""
        items = list(range(20))
        self.assertEqual(ordered_map(lambda x: x * x, items, threads=4), [x * x for x in items])
        self.assertEqual(ordered_map(lambda x: x + 1, items, threads=1), [x + 1 for x in items])

    def test_exception_propagates(self):
        """测试任务异常原样抛出"""
        def boom(x):
            raise DomainError(f"bad {x}")

        with self.assertRaises(DomainError):
            ordered_map(boom, [1, 2, 3], threads=2)

    def test_threads_from_settings(self):
        """测试线程数取自配置"""
        self.assertEqual(ordered_map(str, [1, 2], settings=LabSettings(threads=2)), ["1", "2"])

    def test_parallel_solves_match_serial(self):
        """测试并发求解与串行结果逐位一致"""
        settings = LabSettings()
        specs = [IsoscelesSpec(a, 1.0) for a in (0.4, 1.0, 2.2)]
        solve = lambda s: neumann_spectrum(s, 8, 1, settings)[0].eigenvalue  # noqa: E731
        self.assertEqual(ordered_map(solve, specs, threads=3), ordered_map(solve, specs, threads=1))


class TestSolverFactory(unittest.TestCase):
    """测试求解器工厂"""

    def test_available_types(self):
        """测试可用后端"""
        self.assertEqual(set(get_available_solver_types()), {"shift_invert", "lobpcg"})

    def test_unknown_type(self):
        """测试未知后端和缺少类型"""
        with self.assertRaises(SettingsError):
            create_solver({"type": "arpack_magic"})
        with self.assertRaises(SettingsError):
            create_solver({"name": "x"})


if __name__ == "__main__":
    unittest.main()
