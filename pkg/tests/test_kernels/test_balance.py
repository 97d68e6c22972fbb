import math
import unittest

import numpy as np

from src.roughbilliards.kernels import (
    AutoKernel,
    DeterministicKernel,
    atomic_balance_defect,
    balance_estimate,
    detailed_balance_defect,
    random_test_functions,
)


class AtomicBalanceTest(unittest.TestCase):
    def test_symmetric_kernels(self):
        grid = [0.2 + 0.05 * i for i in range(50)]
        travel = [0.6 * abs(math.cos(t) / math.sin(t)) for t in grid]
        grid = [t for t, d in zip(grid, travel) if abs(d - round(d)) > 1e-3]
        for kernel in (AutoKernel('specular'), AutoKernel('retro'), AutoKernel('rect', r=0.3)):
            self.assertLess(atomic_balance_defect(kernel, grid), 1e-12, kernel.name)

    def test_halving_kernel_is_not_symmetric(self):
        kernel = DeterministicKernel(lambda t: t / 2)
        self.assertGreater(atomic_balance_defect(kernel, [0.5, 1.0, 2.0]), 0.1)

    def test_continuous_kernel_rejected(self):
        with self.assertRaises(ValueError):
            atomic_balance_defect(AutoKernel('lambertian'), [1.0])


class MonteCarloBalanceTest(unittest.TestCase):
    def test_halving_kernel_defect(self):
        # f(θ, θ′) = θ·θ′² gives the defect -E[θ³]/4 = -(π³ - 6π)/8 under ½·sinθ
        kernel = DeterministicKernel(lambda t: t / 2)
        defect = detailed_balance_defect(kernel, lambda a, b: a * b**2, 20000, np.random.default_rng(0))
        self.assertAlmostEqual(defect, -(math.pi**3 - 6 * math.pi) / 8, delta=0.05)

    def test_specular_within_noise(self):
        mean, stderr = balance_estimate(AutoKernel('specular'), lambda a, b: a * b**2, 5000, np.random.default_rng(1))
        self.assertLess(abs(mean), 4 * stderr)

    def test_lambertian_with_random_functions(self):
        rng = np.random.default_rng(2)
        kernel = AutoKernel('lambertian')
        for f in random_test_functions(3, rng):
            mean, stderr = balance_estimate(kernel, f, 5000, rng)
            self.assertGreater(stderr, 0.0)
            self.assertLess(abs(mean), 4.5 * stderr)

    def test_random_functions_are_bounded(self):
        funcs = random_test_functions(2, np.random.default_rng(3), order=2)
        a = np.linspace(0.0, math.pi, 7)
        for f in funcs:
            values = f(a, a[::-1])
            self.assertEqual(values.shape, (7,))
            self.assertTrue(np.all(np.isfinite(values)))
