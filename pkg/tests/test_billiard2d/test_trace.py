import math
import unittest

from src.roughbilliards.billiard2d import reflect, trace
from src.roughbilliards.errors import Capped, NotIncoming, Singular
from src.roughbilliards.geometry import WallSpec, build_wall
from src.roughbilliards.utils import Limits


class ReflectTest(unittest.TestCase):
    def test_specular(self):
        out = reflect((math.cos(4.0), math.sin(4.0)), (0.0, 1.0))
        self.assertAlmostEqual(out[0], math.cos(4.0))
        self.assertAlmostEqual(out[1], -math.sin(4.0))

    def test_outgoing_direction_rejected(self):
        with self.assertRaises(NotIncoming):
            reflect((0.0, 1.0), (0.0, 1.0))

    def test_needs_unit_vectors(self):
        with self.assertRaises(ValueError):
            reflect((0.0, -2.0), (0.0, 1.0))


class TraceTest(unittest.TestCase):
    def test_crevice_retroreflects(self):
        # down the left wall, across the floor and back up: two bounces
        wall = build_wall(WallSpec(family='rect_teeth', params={'r': 0.4}))
        d = -math.cos(math.pi / 4), -math.sin(math.pi / 4)
        log = trace(wall, (1.2, 0.0), d)
        self.assertEqual(log.terminal, 'returned')
        self.assertEqual(log.bounces, 2)
        self.assertAlmostEqual(log.exit_position[0], 1.6)
        self.assertAlmostEqual(log.exit_direction[0], -d[0])
        self.assertAlmostEqual(log.exit_direction[1], -d[1])
        self.assertAlmostEqual(log.events[0].position[0], 1.0)
        self.assertAlmostEqual(log.events[0].position[1], -0.2)
        self.assertAlmostEqual(log.total_time, 0.8 * math.sqrt(2))

    def test_physical_scale(self):
        wall = build_wall(WallSpec(family='rect_teeth', params={'r': 0.4}, scale=0.01))
        d = -math.cos(math.pi / 4), -math.sin(math.pi / 4)
        log = trace(wall, (0.012, 0.0), d)
        self.assertAlmostEqual(log.exit_position[0], 0.016)
        self.assertAlmostEqual(log.total_time, 0.008 * math.sqrt(2))

    def test_corner_is_singular(self):
        wall = build_wall(WallSpec(family='rect_teeth', params={'r': 0.5}))
        d = -math.cos(math.pi / 4), -math.sin(math.pi / 4)
        with self.assertRaises(Singular):
            trace(wall, (1.5, 0.0), d)
        log = trace(wall, (1.5, 0.0), d, strict=False)
        self.assertEqual(log.terminal, 'singular')

    def test_bounce_cap(self):
        wall = build_wall(WallSpec(family='rect_teeth', params={'r': 0.4}))
        d = -math.cos(math.pi / 4), -math.sin(math.pi / 4)
        with self.assertRaises(Capped):
            trace(wall, (1.2, 0.0), d, limits=Limits(max_bounces=1))

    def test_rejects_rays_leaving_upward(self):
        wall = build_wall(WallSpec(family='flat'))
        with self.assertRaises(ValueError):
            trace(wall, (0.0, 1.0), (0.0, 1.0))

    def test_normal_hit_on_flat_seam(self):
        # the hit lands where two periods of the floor meet
        wall = build_wall(WallSpec(family='flat', params={'depth': 1.0}))
        log = trace(wall, (0.0, 0.0), (0.0, -1.0))
        self.assertEqual(log.terminal, 'returned')
        self.assertEqual(log.bounces, 1)
        self.assertAlmostEqual(log.events[0].position[0], 0.0)
        self.assertAlmostEqual(log.events[0].position[1], -1.0)
        self.assertAlmostEqual(log.events[0].outgoing[0], 0.0)
        self.assertAlmostEqual(log.events[0].outgoing[1], 1.0)
        self.assertAlmostEqual(log.total_time, 2.0)

    def test_vertical_drop_into_crevice(self):
        wall = build_wall(WallSpec(family='rect_teeth', params={'r': 1.0}))
        log = trace(wall, (1.5, 0.0), (0.0, -1.0))
        self.assertEqual(log.terminal, 'returned')
        self.assertAlmostEqual(log.events[0].position[0], 1.5)
        self.assertAlmostEqual(log.events[0].position[1], -1.0)

    def test_grazing_flat_wall_is_singular(self):
        wall = build_wall(WallSpec(family='flat', params={'depth': 0.0}))
        with self.assertRaises(Singular):
            trace(wall, (0.0, 0.0), (1.0, 0.0))
