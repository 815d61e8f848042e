"""
测试 Bessel 函数模块
"""

import math
import unittest

from core.errors import DomainError
from core.special_fn import (
    J01,
    J11,
    BesselRoot,
    RootKind,
    bessel_j,
    bessel_j_derivative,
    bessel_j_zero,
    bessel_jprime_zero,
    describe_root,
    jprime_crossing,
)


class TestBesselZeros(unittest.TestCase):
    """测试 J0、J1 的正根"""

    def test_first_zeros(self):
        """测试 j01 与 j11 的已知值"""
        self.assertAlmostEqual(bessel_j_zero(0, 1), 2.4048255577, places=9)
        self.assertAlmostEqual(bessel_j_zero(1, 1), 3.8317059702, places=9)

    def test_constants_match_zeros(self):
        """测试模块常数与求根结果一致"""
        self.assertAlmostEqual(J01, bessel_j_zero(0, 1), places=12)
        self.assertAlmostEqual(J11, bessel_j_zero(1, 1), places=12)

    def test_zeros_are_increasing(self):
        """测试根按序号递增且确实是零点"""
        zeros = [bessel_j_zero(1, k) for k in range(1, 6)]
        self.assertEqual(zeros, sorted(zeros))
        for z in zeros:
            self.assertLess(abs(bessel_j(1, z)), 1e-12)

    def test_unsupported_order(self):
        """测试只支持 0 阶和 1 阶"""
        with self.assertRaises(DomainError):
            bessel_j_zero(2, 1)

    def test_bad_index(self):
        """测试序号必须 ≥ 1"""
        with self.assertRaises(DomainError):
            bessel_j_zero(0, 0)


class TestBesselValues(unittest.TestCase):
    """测试 J_ν(x) 求值"""

    def test_value_at_origin(self):
        """测试 J0(0) = 1, J1(0) = 0"""
        self.assertEqual(bessel_j(0, 0.0), 1.0)
        self.assertEqual(bessel_j(1, 0.0), 0.0)

    def test_derivative_identity(self):
        """测试 J0' = −J1"""
        for x in (0.5, 1.7, 4.2):
            self.assertAlmostEqual(bessel_j_derivative(0, x), -bessel_j(1, x), places=12)

    def test_negative_argument_rejected(self):
        """测试负自变量报定义域错误"""
        with self.assertRaises(DomainError):
            bessel_j(0, -1.0)

    def test_order_out_of_range(self):
        """测试阶数超出范围"""
        with self.assertRaises(DomainError):
            bessel_j(60.0, 1.0)


class TestDerivativeZeros(unittest.TestCase):
    """测试 J_ν' 的第一个正根"""

    def test_known_value(self):
        """测试 j'_{1,1} ≈ 1.8412 与 j'_{2.68,1} ≈ 3.8384"""
        self.assertAlmostEqual(bessel_jprime_zero(1.0), 1.8411837813, places=8)
        self.assertLess(abs(bessel_jprime_zero(2.68) - 3.8384), 5e-5)

    def test_root_is_stationary_point(self):
        """测试根处导数为零"""
        for nu in (0.5, 3.0, 10.0):
            root = bessel_jprime_zero(nu)
            self.assertLess(abs(bessel_j_derivative(nu, root)), 1e-10)
            self.assertGreater(root, math.sqrt(nu * (nu + 2.0)))

    def test_monotone_in_order(self):
        """测试 j'_{ν,1} 关于 ν 递增"""
        values = [bessel_jprime_zero(nu) for nu in (1.0, 2.0, 3.0, 4.0)]
        self.assertEqual(values, sorted(values))

    def test_zero_order_rejected(self):
        """测试 ν = 0 不在定义域内"""
        with self.assertRaises(DomainError):
            bessel_jprime_zero(0.0)

    def test_crossing(self):
        """测试 j'_{ν,1} = j11 的交点约为 2.6741"""
        nu = jprime_crossing()
        self.assertLess(abs(nu - 2.6741), 1e-4)
        self.assertAlmostEqual(bessel_jprime_zero(nu), J11, places=9)


class TestDescribeRoot(unittest.TestCase):
    """测试根的包装"""

    def test_zero_of_j(self):
        """测试 J1 的第二个根"""
        root = describe_root(1, RootKind.ZERO_OF_J, 2)
        self.assertIsInstance(root, BesselRoot)
        self.assertAlmostEqual(root.value, 7.0155866698, places=8)

    def test_derivative_root_only_first(self):
        """测试导数零点只支持第一个根"""
        with self.assertRaises(DomainError):
            describe_root(2.0, RootKind.ZERO_OF_JPRIME, 2)


if __name__ == "__main__":
    unittest.main()
