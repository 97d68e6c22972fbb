import math
import unittest

import numpy as np

from src.roughbilliards.billiard2d import (
    ReflState,
    count_status,
    macro_reflection,
    reflect_uniform,
    run_macro,
    sample_lambda1,
)
from src.roughbilliards.errors import InvalidParam, Singular
from src.roughbilliards.geometry import WallSpec, build_wall
from src.roughbilliards.utils import Limits, sample_rng


class MacroReflectionTest(unittest.TestCase):
    def test_flat_wall_is_specular(self):
        wall = build_wall(WallSpec(family='flat'))
        out = macro_reflection(wall, ReflState(0.3, 1.0))
        self.assertAlmostEqual(out.x, 0.3)
        self.assertAlmostEqual(out.theta, math.pi - 1.0, places=12)

    def test_sunken_floor_shifts_exit(self):
        wall = build_wall(WallSpec(family='flat', params={'depth': 0.5}))
        out = macro_reflection(wall, ReflState(0.0, math.pi / 4))
        self.assertAlmostEqual(out.x, -1.0)
        self.assertAlmostEqual(out.theta, 3 * math.pi / 4)

    def test_involution(self):
        wall = build_wall(WallSpec(family='rect_teeth', params={'r': 0.4}))
        s = ReflState(1.2, math.pi / 4)
        once = macro_reflection(wall, s)
        self.assertAlmostEqual(once.x, 1.6)
        self.assertAlmostEqual(once.theta, math.pi / 4)
        twice = macro_reflection(wall, once)
        self.assertAlmostEqual(twice.x, s.x, places=10)
        self.assertAlmostEqual(twice.theta, s.theta, places=10)

    def test_normal_entry_at_bowl_bottom(self):
        wall = build_wall(WallSpec(family='circ_arcs', params={'xi': math.pi / 2}))
        out = macro_reflection(wall, ReflState(wall.period / 2, math.pi / 2))
        self.assertAlmostEqual(out.theta, math.pi / 2, places=10)
        self.assertAlmostEqual(out.x, wall.period / 2, places=10)

    def test_involution_on_random_entries(self):
        wall = build_wall(WallSpec(family='tri_teeth', params={'psi': 1.0}))
        for i in range(50):
            x, theta = sample_lambda1(sample_rng(3, i), wall.period)
            try:
                s = ReflState(float(x), float(theta))
                twice = macro_reflection(wall, macro_reflection(wall, s))
            except Singular:
                continue
            self.assertAlmostEqual(twice.x, s.x, places=8)
            self.assertAlmostEqual(twice.theta, s.theta, places=8)

    def test_state_validation(self):
        with self.assertRaises(InvalidParam):
            ReflState(0.0, 0.0)
        with self.assertRaises(InvalidParam):
            ReflState(0.0, math.pi)

    def test_run_macro_reports_status(self):
        wall = build_wall(WallSpec(family='rect_teeth', params={'r': 0.4}))
        capped = run_macro(wall, ReflState(1.2, math.pi / 4), Limits(max_bounces=1))
        self.assertEqual(capped.status, 'capped')
        self.assertTrue(math.isnan(capped.theta_out))
        singular = run_macro(build_wall(WallSpec(family='rect_teeth', params={'r': 0.5})), ReflState(1.5, math.pi / 4))
        self.assertEqual(singular.status, 'singular')


class BatchTest(unittest.TestCase):
    def test_reflect_uniform_flat(self):
        wall = build_wall(WallSpec(family='flat'))
        outcomes = reflect_uniform(wall, 1.0, 10, seed=1)
        self.assertEqual(len(outcomes), 10)
        self.assertEqual(count_status(outcomes), {'returned': 10, 'singular': 0, 'capped': 0})
        for o in outcomes:
            self.assertTrue(0.0 <= o.x < wall.period)
            self.assertAlmostEqual(o.theta_out, math.pi - 1.0, places=12)

    def test_reproducible_per_sample(self):
        wall = build_wall(WallSpec(family='rect_teeth', params={'r': 0.3}))
        short = reflect_uniform(wall, 0.8, 5, seed=11)
        long = reflect_uniform(wall, 0.8, 20, seed=11)
        self.assertEqual(short, long[:5])

    def test_sample_lambda1(self):
        x, theta = sample_lambda1(np.random.default_rng(0), 2.0, size=20000)
        self.assertTrue(np.all((x >= 0.0) & (x < 2.0)))
        self.assertTrue(np.all((theta >= 0.0) & (theta <= math.pi)))
        # mean of the density ½·sinθ is π/2
        self.assertAlmostEqual(float(theta.mean()), math.pi / 2, delta=0.03)
