import math
import unittest

import numpy as np

from src.roughbilliards.diskwall import (
    ConfigState,
    DiskParams,
    TiltedState,
    apply_collision_matrix,
    collision_matrix,
    contact_normal,
    from_tilted,
    reflect_velocity,
    rolling_momentum,
    sample_lambda2,
    satellite_count,
    satellite_positions,
    to_tilted,
)
from src.roughbilliards.errors import DegenerateAngle, InvalidParam


class DiskParamsTest(unittest.TestCase):
    def test_satellite_count(self):
        self.assertEqual(satellite_count(1.0), 8)
        self.assertEqual(satellite_count(1e-3), 63)
        self.assertEqual(DiskParams(eps=1e-3).N, 63)
        self.assertAlmostEqual(DiskParams(N=16).rho, math.pi / 8)

    def test_validation(self):
        with self.assertRaises(InvalidParam):
            DiskParams(m=-1.0)
        with self.assertRaises(InvalidParam):
            DiskParams(eps=0.0)
        with self.assertRaises(InvalidParam):
            DiskParams(N=4)

    def test_frame_is_orthonormal(self):
        params = DiskParams(m=2.0, J=0.5)
        frame = [params.chi_perp, params.e2_hat, params.chi]
        for i, a in enumerate(frame):
            for j, b in enumerate(frame):
                self.assertAlmostEqual(params.inner(a, b), float(i == j))
        self.assertAlmostEqual(params.compression, 1 / math.sqrt(5.0))

    def test_satellites(self):
        params = DiskParams(N=8)
        points = satellite_positions((0.5, 0.0, 0.0), params)
        self.assertEqual(points.shape, (8, 2))
        np.testing.assert_allclose(points[0], [0.5, -1.0])
        np.testing.assert_allclose(points[2], [1.5, 0.0], atol=1e-15)

    def test_contact_normal_of_bottom_satellite(self):
        params = DiskParams(m=1.0, J=3.0)
        n = contact_normal((0.0, 1.0), 0.0, params)
        np.testing.assert_allclose(n, params.e2_hat)
        out = reflect_velocity((0.3, -0.4, 0.2), n, params)
        np.testing.assert_allclose(out, [0.3, 0.4, 0.2])

    def test_contact_normal_of_side_satellite(self):
        n = contact_normal((1.0, 0.0), 0.0, DiskParams(m=1.0, J=1.0))
        np.testing.assert_allclose(n, np.array([1.0, 0.0, 1.0]) / math.sqrt(2), atol=1e-12)


class CollisionMatrixTest(unittest.TestCase):
    def test_involution_and_isometry(self):
        for m, J in ((1.0, 1.0), (0.3, 2.5), (4.0, 0.1)):
            params = DiskParams(m, J)
            G = np.diag(params.metric)
            for kind in ('smooth', 'no_slip'):
                A = collision_matrix(kind, params)
                np.testing.assert_allclose(A @ A, np.eye(3), atol=1e-12)
                np.testing.assert_allclose(A.T @ G @ A, G, atol=1e-12)

    def test_no_slip_keeps_rolling_momentum(self):
        params = DiskParams(m=1.0, J=0.5)
        u = np.array([0.3, -0.8, 1.1])
        after = apply_collision_matrix('no_slip', u, params)
        self.assertAlmostEqual(rolling_momentum(after, params), rolling_momentum(u, params), places=12)
        self.assertAlmostEqual(after[1], 0.8)

    def test_rolling_momentum_values(self):
        params = DiskParams(m=1.0, J=1.0)
        self.assertEqual(rolling_momentum((-1.0, 0.0, 1.0), params), 2.0)
        self.assertEqual(rolling_momentum((1.0, 5.0, 1.0), params), 0.0)

    def test_unknown_kind(self):
        with self.assertRaises(ValueError):
            collision_matrix('sticky', DiskParams())


class TiltedCoordinatesTest(unittest.TestCase):
    def test_round_trip(self):
        params = DiskParams(m=1.0, J=2.0, eps=0.1)
        t = TiltedState(0.25, -0.5, 1.1, 0.7)
        s = from_tilted(t, params)
        self.assertEqual(s.y[1], 0.0)
        self.assertAlmostEqual(params.norm(s.w), 1.0)
        back = to_tilted(s, params)
        for a, b in zip((back.y1, back.y3, back.theta, back.psi), (t.y1, t.y3, t.theta, t.psi)):
            self.assertAlmostEqual(a, b)

    def test_rolling_velocity_is_degenerate(self):
        params = DiskParams()
        with self.assertRaises(DegenerateAngle):
            to_tilted(ConfigState((0.0, 0.0, 0.0), tuple(params.chi)), params)

    def test_angle_ranges(self):
        with self.assertRaises(InvalidParam):
            TiltedState(0.0, 0.0, 0.0, 1.0)

    def test_lambda2_sample(self):
        params = DiskParams(eps=0.1)
        rng = np.random.default_rng(0)
        for _ in range(20):
            s = sample_lambda2(rng, params)
            s.check(params)
            self.assertTrue(0.0 <= s.y[0] < 0.1 and 0.0 <= s.y[2] < params.rho)
