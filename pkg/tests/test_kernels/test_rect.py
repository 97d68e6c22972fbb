import math
import unittest

import numpy as np

from src.roughbilliards.errors import BoundaryCase
from src.roughbilliards.geometry import WallSpec
from src.roughbilliards.kernels import RectKernel, averaged_kernel, rect_specular_prob, sample_kernel


class RectSpecularProbTest(unittest.TestCase):
    def test_even_travel(self):
        # 2r|cotθ| = 0.6
        self.assertAlmostEqual(rect_specular_prob(math.pi / 4, 0.3), 0.7)

    def test_odd_travel(self):
        # 2r|cotθ| = 1.5
        self.assertAlmostEqual(rect_specular_prob(math.pi / 4, 0.75), 0.75)

    def test_mirror_symmetry(self):
        for theta in (0.3, 0.9, 1.4):
            self.assertAlmostEqual(rect_specular_prob(theta, 0.3), rect_specular_prob(math.pi - theta, 0.3))

    def test_normal_incidence_convention(self):
        self.assertEqual(rect_specular_prob(math.pi / 2, 0.3), 0.5)

    def test_integer_travel_is_boundary_case(self):
        with self.assertRaises(BoundaryCase):
            rect_specular_prob(math.pi / 4, 0.5)

    def test_invalid_ratio(self):
        with self.assertRaises(ValueError):
            rect_specular_prob(1.0, -0.1)


class RectKernelTest(unittest.TestCase):
    def test_atoms(self):
        atoms = RectKernel(0.3).atoms(math.pi / 4)
        self.assertEqual(len(atoms), 2)
        self.assertAlmostEqual(atoms[0].angle, math.pi / 4)
        self.assertAlmostEqual(atoms[0].prob, 0.3)
        self.assertAlmostEqual(atoms[1].angle, 3 * math.pi / 4)
        self.assertAlmostEqual(atoms[1].prob, 0.7)

    def test_atoms_merge_at_normal_incidence(self):
        atoms = RectKernel(0.3).atoms(math.pi / 2)
        self.assertEqual(len(atoms), 1)
        self.assertAlmostEqual(atoms[0].prob, 1.0)

    def test_boundary_case_is_jittered(self):
        kernel = RectKernel(0.5)
        with self.assertLogs(level='WARNING'):
            out = sample_kernel(kernel, math.pi / 4, np.random.default_rng(0))
        self.assertTrue(min(abs(out - math.pi / 4), abs(out - 3 * math.pi / 4)) < 1e-9)

    def test_matches_simulated_wall(self):
        theta, r, n = 1.0, 0.3, 4000
        dist = averaged_kernel(WallSpec(family='rect_teeth', params={'r': r}), theta, n, seed=5)
        p = rect_specular_prob(theta, r)
        freq = dist.mass_near(math.pi - theta, 1e-6)
        self.assertAlmostEqual(freq, p, delta=4 * math.sqrt(p * (1 - p) / len(dist)))
        self.assertAlmostEqual(freq + dist.mass_near(theta, 1e-6), 1.0)

    def test_scale_invariance(self):
        spec = WallSpec(family='rect_teeth', params={'r': 0.3})
        a = averaged_kernel(spec, 1.0, 200, seed=2)
        b = averaged_kernel(spec.with_changes(scale=0.37), 1.0, 200, seed=2)
        np.testing.assert_allclose(np.sort(a.samples), np.sort(b.samples), atol=1e-9)
