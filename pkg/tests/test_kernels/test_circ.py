import math
import unittest

import numpy as np

from src.roughbilliards.billiard2d import ReflState, macro_reflection
from src.roughbilliards.errors import Singular
from src.roughbilliards.geometry import WallSpec, build_wall
from src.roughbilliards.kernels import CircKernel, circ_arc_bounces, circ_arc_map


class CircArcMapTest(unittest.TestCase):
    def test_single_bounce_in_semicircle(self):
        # vertical ray at x = 0.3 hits the bowl once, at (0.3, -√0.21), where the normal points to the center
        nx, ny = 0.4, math.sqrt(0.21) / 0.5
        dot = -ny
        expected = math.atan2(-1.0 - 2 * dot * ny, -2 * dot * nx)
        self.assertAlmostEqual(circ_arc_map(0.3, math.pi / 2, math.pi / 2), expected, places=12)
        self.assertEqual(circ_arc_bounces(0.3, math.pi / 2, math.pi / 2), 1)

    def test_trajectory_through_arc_endpoint_is_singular(self):
        with self.assertRaises(Singular):
            circ_arc_map(0.25, math.pi / 2, math.pi / 2)

    def test_matches_trace(self):
        rng = np.random.default_rng(4)
        for xi in (math.pi / 6, math.pi / 3, math.pi / 2):
            wall = build_wall(WallSpec(family='circ_arcs', params={'xi': xi}))
            checked = 0
            for X, theta in zip(rng.uniform(size=40), rng.uniform(0.1, math.pi - 0.1, size=40)):
                try:
                    analytic = circ_arc_map(float(X), float(theta), xi)
                    simulated = macro_reflection(wall, ReflState(float(X), float(theta))).theta
                except Singular:
                    continue
                self.assertAlmostEqual(analytic, simulated, places=8)
                checked += 1
            self.assertGreater(checked, 35)

    def test_parameter_ranges(self):
        with self.assertRaises(ValueError):
            circ_arc_map(1.5, 1.0, 1.0)
        with self.assertRaises(ValueError):
            CircKernel(0.0)


class CircKernelTest(unittest.TestCase):
    def test_continuous_law(self):
        kernel = CircKernel(math.pi / 3)
        self.assertFalse(kernel.is_atomic)
        self.assertEqual(kernel.atoms(1.0), [])
        rng = np.random.default_rng(0)
        draws = {kernel.sample(1.0, rng) for _ in range(200)}
        self.assertGreater(len(draws), 150)
        self.assertTrue(all(0.0 < d < math.pi for d in draws))
