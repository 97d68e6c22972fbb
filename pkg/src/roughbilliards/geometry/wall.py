import logging
import math
from dataclasses import replace
from typing import Dict, List, Tuple

import numpy as np

from ..errors import InvalidParam
from .families import arc_cell, custom_cell, flat_cell, rect_cell, tri_cell
from .segments import BoundarySegment
from .spec import WallSpec, validate_spec

logger = logging.getLogger(__name__)

# closing an ell_arcs axis ratio onto the circular family
CIRCLE_RATIO_TOL = 1e-12


class Wall(object):
    """
    Periodic wall stored as one period at unit scale (half-plane datum) plus the scale and datum.
    Walls are immutable after construction and safe to share between workers.
    """

    def __init__(self, spec: WallSpec, unit_segments: List[BoundarySegment], unit_period: float, unit_depth: float):
        self.spec = spec
        self.family = spec.canonical_family
        self.scale = float(spec.scale)
        self.unit_segments: Tuple[BoundarySegment, ...] = tuple(unit_segments)
        self.unit_period = float(unit_period)
        self.unit_depth = float(unit_depth)
        self.offset = -1.0 if spec.datum == 'disk_wall' else 0.0

    def __repr__(self):
        return f"Wall(family={self.family}, params={self.spec.params}, scale={self.scale}, datum={self.spec.datum})"

    def __reduce__(self):
        return (build_wall, (self.spec,))

    @property
    def period(self) -> float:
        return self.unit_period * self.scale

    @property
    def depth(self) -> float:
        return self.unit_depth * self.scale

    def in_half_plane(self) -> "Wall":
        """Same wall with the datum shift removed"""
        if self.offset == 0.0:
            return self
        spec = self.spec.with_changes(datum='half_plane')
        return Wall(spec, list(self.unit_segments), self.unit_period, self.unit_depth)

    def reduce(self, x: float) -> Tuple[int, float]:
        """Split a physical abscissa into (period index, offset in [0, period))"""
        k = math.floor(x / self.period)
        rem = x - k * self.period
        if rem >= self.period:
            k, rem = k + 1, rem - self.period
        return k, rem

    def segments(self, period_index: int = 0) -> List[BoundarySegment]:
        """Boundary segments of one period in physical coordinates"""
        shift = period_index * self.unit_period
        return [
            replace(s, period_index=period_index).transformed(
                sx=self.scale, sy=self.scale, dx=shift * self.scale, dy=self.offset
            )
            for s in self.unit_segments
        ]

    def to_unit(self, point) -> Tuple[float, float]:
        return (point[0] / self.scale, (point[1] - self.offset) / self.scale)

    def from_unit(self, point) -> Tuple[float, float]:
        return (point[0] * self.scale, point[1] * self.scale + self.offset)

    def polyline(self, periods: int = 1, points_per_arc: int = 64) -> np.ndarray:
        """Sampled boundary as an (n, 2) array of physical (x, y) rows"""
        rows = []
        for k in range(periods):
            for segment in self.segments(k):
                if segment.kind == 'line':
                    pts = [segment.p0, segment.p1]
                else:
                    ts = np.linspace(segment.angle_start, segment.angle_end, points_per_arc + 1)
                    pts = [segment.point_at(t) for t in ts]
                if rows and math.dist(rows[-1], pts[0]) < 1e-15:
                    pts = pts[1:]
                rows.extend(pts)
        return np.asarray(rows, dtype=float)

    def unit_distance(self, points: np.ndarray) -> np.ndarray:
        """Distance from unit-scale points (n, 2) to the unit boundary; lower bound on elliptical arcs"""
        points = np.atleast_2d(np.asarray(points, dtype=float))
        x = np.mod(points[:, 0], self.unit_period)
        y = points[:, 1]
        best = np.full(len(points), np.inf)
        for shift in (-self.unit_period, 0.0, self.unit_period):
            px = x - shift
            for segment in self.unit_segments:
                best = np.minimum(best, _segment_distance(segment, px, y))
        return best

    def unit_inside(self, points: np.ndarray) -> np.ndarray:
        """True for unit-scale points inside the wall region (below the boundary)"""
        points = np.atleast_2d(np.asarray(points, dtype=float))
        x = np.mod(points[:, 0], self.unit_period)
        y = points[:, 1]
        crossings = np.zeros(len(points), dtype=int)
        for segment in self.unit_segments:
            crossings += _upward_crossings(segment, x, y)
        inside = (crossings % 2) == 1
        inside[y > 0.0] = False
        inside[y < -self.unit_depth] = True
        return inside

    def signed_clearance(self, points: np.ndarray) -> np.ndarray:
        """Physical signed distance to the boundary: positive in the billiard domain, negative inside the wall"""
        points = np.atleast_2d(np.asarray(points, dtype=float))
        unit = np.column_stack([points[:, 0] / self.scale, (points[:, 1] - self.offset) / self.scale])
        dist = self.unit_distance(unit) * self.scale
        return np.where(self.unit_inside(unit), -dist, dist)

    def nearest_segment(self, point) -> Tuple[BoundarySegment, float]:
        """Physical segment closest to a physical point, with the distance"""
        k, _ = self.reduce(point[0])
        best, best_dist = None, math.inf
        for j in (k - 1, k, k + 1):
            for segment in self.segments(j):
                dist = segment.distance_to(point)
                if dist < best_dist:
                    best, best_dist = segment, dist
        return best, best_dist

    def to_dict(self) -> Dict:
        return {
            'spec': self.spec.to_dict(),
            'family': self.family,
            'period': self.period,
            'depth': self.depth,
            'segments': [s.to_dict() for s in self.segments(0)],
        }


def build_wall(spec: WallSpec) -> Wall:
    validate_spec(spec)
    family = spec.canonical_family
    if family == 'flat':
        cell = flat_cell(spec.param('depth', 0.0))
    elif family == 'rect_teeth':
        cell = rect_cell(spec.param('r'))
    elif family == 'tri_teeth':
        cell = tri_cell(spec.param('psi'))
    elif family == 'circ_arcs':
        cell = arc_cell(spec.param('xi'))
    elif family == 'ell_arcs':
        cell = arc_cell(spec.param('xi'), spec.param('axis_ratio'))
    else:
        cell = custom_cell(spec)
    segments, period, depth = cell
    logger.debug(f"Built {family} wall with {len(segments)} segments per period {period * spec.scale}")
    return Wall(spec, segments, period, depth)


def foreshorten(spec: WallSpec, m: float, J: float) -> WallSpec:
    """
    Wall seen by the (y1, y2) projection of the cylindrical collision dynamics: the abscissa is
    compressed by (1 + m/J)^(-1/2), depth unchanged.
    """
    if not (m > 0 and J > 0):
        raise InvalidParam(f"mass and inertia must be positive, got m={m}, J={J}")
    return foreshorten_by(spec, 1.0 + m / J)


def foreshorten_by(spec: WallSpec, factor: float) -> WallSpec:
    """Compress the abscissa by factor^(-1/2); factor < 1 stretches, so factor c then 1/c is the identity"""
    if not factor > 0:
        raise InvalidParam(f"foreshortening factor must be positive, got {factor}")
    if spec.datum not in ('half_plane', 'disk_wall'):
        raise InvalidParam(f"cannot foreshorten datum {spec.datum!r}")
    validate_spec(spec)
    f = factor ** -0.5
    family = spec.canonical_family
    params = dict(spec.params)
    scale = spec.scale * f

    if family == 'flat':
        if 'depth' in params:
            params['depth'] = spec.param('depth') / f
    elif family == 'rect_teeth':
        params['r'] = spec.param('r') / f
    elif family == 'tri_teeth':
        params['psi'] = 2.0 * math.atan(f * math.tan(spec.param('psi') / 2))
    elif family in ('circ_arcs', 'ell_arcs'):
        ratio = (spec.param('axis_ratio') if family == 'ell_arcs' else 1.0) * f
        if abs(ratio - 1.0) <= CIRCLE_RATIO_TOL:
            family = 'circ_arcs'
            params.pop('axis_ratio', None)
        else:
            family = 'ell_arcs'
            params['axis_ratio'] = ratio
    else:
        segments = [BoundarySegment.from_dict(s).transformed(sy=1.0 / f) for s in params['segments']]
        params['segments'] = [s.to_dict() for s in segments]
    return WallSpec(family=family, params=params, scale=scale, datum=spec.datum)


def _segment_distance(segment: BoundarySegment, px: np.ndarray, py: np.ndarray) -> np.ndarray:
    if segment.kind == 'line':
        ax, ay = segment.p0
        ex, ey = segment.p1[0] - ax, segment.p1[1] - ay
        s = np.clip(((px - ax) * ex + (py - ay) * ey) / (ex * ex + ey * ey), 0.0, 1.0)
        return np.hypot(px - ax - s * ex, py - ay - s * ey)

    cx, cy = segment.center
    end_dist = np.minimum(
        np.hypot(px - segment.p0[0], py - segment.p0[1]), np.hypot(px - segment.p1[0], py - segment.p1[1])
    )
    if segment.rx == segment.ry:
        angle = np.arctan2(py - cy, px - cx)
        within = _within_arc(segment, angle)
        radial = np.abs(np.hypot(px - cx, py - cy) - segment.rx)
        return np.where(within, radial, end_dist)

    # sampled ellipse, shifted down by the chord sagitta so the value stays a lower bound
    n = 256
    ts = np.linspace(segment.angle_start, segment.angle_end, n + 1)
    qx = cx + segment.rx * np.cos(ts)
    qy = cy + segment.ry * np.sin(ts)
    best = end_dist
    for i in range(n):
        ex, ey = qx[i + 1] - qx[i], qy[i + 1] - qy[i]
        s = np.clip(((px - qx[i]) * ex + (py - qy[i]) * ey) / (ex * ex + ey * ey), 0.0, 1.0)
        best = np.minimum(best, np.hypot(px - qx[i] - s * ex, py - qy[i] - s * ey))
    step = abs(segment.angle_end - segment.angle_start) / n
    sagitta = max(segment.rx, segment.ry) * step * step / 8.0
    return np.maximum(best - sagitta, 0.0)


def _within_arc(segment: BoundarySegment, angle: np.ndarray) -> np.ndarray:
    lo, hi = sorted((segment.angle_start, segment.angle_end))
    rel = np.mod(angle - lo, 2 * np.pi)
    return rel <= hi - lo


def _upward_crossings(segment: BoundarySegment, px: np.ndarray, py: np.ndarray) -> np.ndarray:
    """Number of times the vertical ray {(px, y): y > py} crosses the segment (half-open in x)"""
    if segment.kind == 'line':
        (ax, ay), (bx, by) = segment.p0, segment.p1
        if ax == bx:
            return np.zeros(len(px), dtype=int)
        lo, hi = min(ax, bx), max(ax, bx)
        spans = (px >= lo) & (px < hi)
        yline = ay + (px - ax) * (by - ay) / (bx - ax)
        return (spans & (yline > py)).astype(int)

    cx, cy = segment.center
    u = (px - cx) / segment.rx
    valid = np.abs(u) <= 1.0
    base = np.arccos(np.clip(u, -1.0, 1.0))
    count = np.zeros(len(px), dtype=int)
    # at |u| = 1 both roots are the same boundary point
    distinct = (base > 0.0) & (base < np.pi)
    for t, mask in ((base, valid), (-base, valid & distinct)):
        y = cy + segment.ry * np.sin(t)
        hit = mask & _within_arc(segment, t) & (y > py)
        count += hit.astype(int)
    return count