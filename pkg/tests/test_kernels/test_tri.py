import math
import unittest

from src.roughbilliards.geometry import WallSpec
from src.roughbilliards.kernels import TriKernel, atomic_balance_defect, averaged_kernel, empirical_atoms, tri_atoms


class TriKernelTest(unittest.TestCase):
    def test_right_angle_groove_retroreflects_at_normal_incidence(self):
        atoms = tri_atoms(math.pi / 2, math.pi / 2)
        self.assertEqual(len(atoms), 1)
        self.assertAlmostEqual(atoms[0].angle, math.pi / 2)
        self.assertAlmostEqual(atoms[0].prob, 1.0)

    def test_at_most_two_atoms(self):
        for psi in (0.7, 1.0, math.pi / 3, 2.0):
            for theta in (0.45, 1.1, 1.9, 2.6):
                atoms = tri_atoms(theta, psi)
                self.assertLessEqual(len(atoms), 2)
                self.assertAlmostEqual(sum(a.prob for a in atoms), 1.0)
                for atom in atoms:
                    self.assertTrue(0.0 < atom.angle < math.pi)

    def test_detailed_balance(self):
        kernel = TriKernel(1.0)
        self.assertLess(atomic_balance_defect(kernel, [0.45, 0.8, 1.3, 1.85, 2.3, 2.7]), 1e-9)

    def test_matches_simulated_wall(self):
        theta, psi, n = 1.1, 1.0, 2000
        dist = averaged_kernel(WallSpec(family='tri_teeth', params={'psi': psi}), theta, n, seed=9)
        expected = tri_atoms(theta, psi)
        for got in empirical_atoms(dist):
            self.assertLess(min(abs(got.angle - want.angle) for want in expected), 1e-7)
        for want in expected:
            freq = dist.mass_near(want.angle, 1e-7)
            self.assertAlmostEqual(freq, want.prob, delta=4 * math.sqrt(0.25 / len(dist)))

    def test_invalid_angle(self):
        with self.assertRaises(ValueError):
            TriKernel(math.pi)
