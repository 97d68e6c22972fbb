import math
import unittest

import numpy as np

from src.roughbilliards.errors import InvalidParam, MalformedCustom
from src.roughbilliards.geometry import WallSpec, build_wall, canonical_family, foreshorten
from src.roughbilliards.geometry.wall import foreshorten_by


class WallSpecTest(unittest.TestCase):
    def test_aliases(self):
        self.assertEqual(canonical_family('rect'), 'rect_teeth')
        self.assertEqual(canonical_family('Circ'), 'circ_arcs')
        with self.assertRaises(InvalidParam):
            canonical_family('hexagons')

    def test_invalid_parameters(self):
        for spec in (
            WallSpec(family='rect_teeth', params={'r': 0.0}),
            WallSpec(family='tri_teeth', params={'psi': math.pi}),
            WallSpec(family='circ_arcs', params={'xi': 2.0}),
            WallSpec(family='ell_arcs', params={'xi': 1.0}),
            WallSpec(family='flat', scale=-1.0),
            WallSpec(family='flat', datum='sphere'),
        ):
            with self.assertRaises(InvalidParam):
                build_wall(spec)

    def test_with_changes(self):
        spec = WallSpec(family='rect', params={'r': 0.3})
        moved = spec.with_changes(scale=0.1, datum='disk_wall')
        self.assertEqual(moved.params, {'r': 0.3})
        self.assertEqual((moved.scale, moved.datum), (0.1, 'disk_wall'))
        self.assertEqual(spec.scale, 1.0)


class BuildWallTest(unittest.TestCase):
    def test_rect_wall_geometry(self):
        wall = build_wall(WallSpec(family='rect_teeth', params={'r': 0.5}, scale=2.0))
        self.assertEqual(wall.family, 'rect_teeth')
        self.assertAlmostEqual(wall.period, 4.0)
        self.assertAlmostEqual(wall.depth, 1.0)
        segments = wall.segments(1)
        self.assertEqual(len(segments), 4)
        self.assertEqual(segments[0].p0, (4.0, 0.0))
        self.assertEqual(segments[2].p1, (8.0, -1.0))
        self.assertTrue(all(s.period_index == 1 for s in segments))

    def test_disk_wall_datum(self):
        wall = build_wall(WallSpec(family='flat', datum='disk_wall', scale=0.1))
        self.assertEqual(wall.segments(0)[0].p0, (0.0, -1.0))
        self.assertEqual(wall.in_half_plane().offset, 0.0)

    def test_semicircle_cell(self):
        wall = build_wall(WallSpec(family='circ_arcs', params={'xi': math.pi / 2}))
        (arc,) = wall.unit_segments
        self.assertAlmostEqual(arc.radius, 0.5)
        self.assertAlmostEqual(wall.depth, 0.5)
        self.assertEqual(arc.p0, (0.0, 0.0))
        self.assertEqual(arc.p1, (1.0, 0.0))

    def test_reduce(self):
        wall = build_wall(WallSpec(family='tri_teeth', params={'psi': 1.0}, scale=0.5))
        k, rem = wall.reduce(-0.75)
        self.assertEqual(k, -2)
        self.assertAlmostEqual(rem, 0.25)

    def test_signed_clearance(self):
        wall = build_wall(WallSpec(family='rect_teeth', params={'r': 1.0}))
        clearance = wall.signed_clearance(np.array([[0.5, 0.25], [1.5, -0.5], [0.5, -0.5]]))
        np.testing.assert_allclose(clearance, [0.25, 0.5, -0.5], atol=1e-12)

    def test_polyline_closes_each_period(self):
        wall = build_wall(WallSpec(family='rect_teeth', params={'r': 0.3}))
        points = wall.polyline(periods=2)
        self.assertEqual(points.shape, (9, 2))
        np.testing.assert_allclose(points[-1], [4.0, 0.0])

    def test_custom_wall(self):
        v_groove = {
            'period': 2.0,
            'segments': [
                {'kind': 'line', 'p0': [0.0, 0.0], 'p1': [1.0, -0.5]},
                {'kind': 'line', 'p0': [1.0, -0.5], 'p1': [2.0, 0.0]},
            ],
        }
        wall = build_wall(WallSpec(family='custom', params=v_groove))
        self.assertAlmostEqual(wall.period, 2.0)
        self.assertAlmostEqual(wall.depth, 0.5)

        gap = dict(v_groove, segments=[v_groove['segments'][0], {'kind': 'line', 'p0': [1.1, -0.5], 'p1': [2.0, 0.0]}])
        with self.assertRaises(MalformedCustom):
            build_wall(WallSpec(family='custom', params=gap))

        bump = dict(v_groove, segments=[{'kind': 'line', 'p0': [0.0, 0.0], 'p1': [1.0, 0.5]}, v_groove['segments'][1]])
        with self.assertRaises(MalformedCustom):
            build_wall(WallSpec(family='custom', params=bump))


class ForeshortenTest(unittest.TestCase):
    def test_rect_keeps_depth(self):
        spec = WallSpec(family='rect_teeth', params={'r': 0.3}, scale=0.1)
        short = foreshorten(spec, 1.0, 1.0)
        self.assertAlmostEqual(short.scale, 0.1 / math.sqrt(2))
        self.assertAlmostEqual(short.params['r'], 0.3 * math.sqrt(2))
        self.assertAlmostEqual(build_wall(short).depth, build_wall(spec).depth)

    def test_tri_angle(self):
        short = foreshorten(WallSpec(family='tri_teeth', params={'psi': math.pi / 2}), 3.0, 1.0)
        self.assertAlmostEqual(short.params['psi'], 2 * math.atan(0.5))

    def test_circle_becomes_ellipse(self):
        short = foreshorten(WallSpec(family='circ_arcs', params={'xi': 1.0}), 1.0, 1.0)
        self.assertEqual(short.canonical_family, 'ell_arcs')
        self.assertAlmostEqual(short.params['axis_ratio'], 1 / math.sqrt(2))

    def test_inverse_factor(self):
        spec = WallSpec(family='circ_arcs', params={'xi': 1.0})
        back = foreshorten_by(foreshorten_by(spec, 4.0), 0.25)
        self.assertEqual(back.canonical_family, 'circ_arcs')
        self.assertAlmostEqual(back.scale, 1.0)

    def test_rejects_bad_mass(self):
        with self.assertRaises(InvalidParam):
            foreshorten(WallSpec(family='flat'), 0.0, 1.0)
