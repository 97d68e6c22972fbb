"""Boundary pieces of a periodic wall.

Segments are oriented along the wall from left to right; the billiard domain lies on the left of
the direction of travel, so the outward normal (pointing out of the wall) is the tangent rotated by +90°.
Arcs are axis-aligned elliptical arcs ``center + (rx·cos t, ry·sin t)`` for t between angle_start
and angle_end; rx == ry gives a circular arc.
"""

import logging
import math
from dataclasses import dataclass, replace
from typing import Dict, List, Optional, Tuple

from ..errors import InvalidParam

logger = logging.getLogger(__name__)

Point = Tuple[float, float]


@dataclass(frozen=True)
class BoundarySegment:
    kind: str
    p0: Point
    p1: Point
    center: Optional[Point] = None
    rx: float = 0.0
    ry: float = 0.0
    angle_start: float = 0.0
    angle_end: float = 0.0
    period_index: int = 0

    def __post_init__(self):
        if self.kind not in ('line', 'arc'):
            raise InvalidParam(f"segment kind must be 'line' or 'arc', got {self.kind!r}")
        if self.kind == 'arc':
            if self.center is None or self.rx <= 0 or self.ry <= 0:
                raise InvalidParam("arc segment needs a center and positive radii")
            if self.angle_start == self.angle_end:
                raise InvalidParam("arc segment spans a zero angle")
        elif math.dist(self.p0, self.p1) == 0.0:
            raise InvalidParam("line segment has zero length")

    @classmethod
    def line(cls, p0: Point, p1: Point, period_index: int = 0) -> "BoundarySegment":
        return cls(kind='line', p0=_point(p0), p1=_point(p1), period_index=period_index)

    @classmethod
    def arc(
        cls,
        center: Point,
        rx: float,
        angle_start: float,
        angle_end: float,
        ry: Optional[float] = None,
        period_index: int = 0,
    ) -> "BoundarySegment":
        ry = rx if ry is None else ry
        cx, cy = center
        p0 = (cx + rx * math.cos(angle_start), cy + ry * math.sin(angle_start))
        p1 = (cx + rx * math.cos(angle_end), cy + ry * math.sin(angle_end))
        return cls(
            kind='arc',
            p0=p0,
            p1=p1,
            center=_point(center),
            rx=float(rx),
            ry=float(ry),
            angle_start=float(angle_start),
            angle_end=float(angle_end),
            period_index=period_index,
        )

    @property
    def radius(self) -> float:
        if self.kind != 'arc' or self.rx != self.ry:
            raise InvalidParam("radius is only defined for circular arcs")
        return self.rx

    @property
    def concave(self) -> bool:
        """True when the billiard domain is on the center side of the arc (a focusing bowl)"""
        return self.kind == 'arc' and self.angle_end > self.angle_start

    @property
    def turning_angle(self) -> float:
        if self.kind == 'line':
            return 0.0
        return abs(self.angle_end - self.angle_start)

    def point_at(self, t: float) -> Point:
        if self.kind == 'line':
            return (self.p0[0] + t * (self.p1[0] - self.p0[0]), self.p0[1] + t * (self.p1[1] - self.p0[1]))
        cx, cy = self.center
        return (cx + self.rx * math.cos(t), cy + self.ry * math.sin(t))

    def param_of(self, point: Point) -> float:
        """Line: fraction along p0->p1. Arc: ellipse angle of the point."""
        if self.kind == 'line':
            ex, ey = self.p1[0] - self.p0[0], self.p1[1] - self.p0[1]
            return ((point[0] - self.p0[0]) * ex + (point[1] - self.p0[1]) * ey) / (ex * ex + ey * ey)
        cx, cy = self.center
        return math.atan2((point[1] - cy) / self.ry, (point[0] - cx) / self.rx)

    def contains_param(self, t: float, slack: float = 0.0) -> Optional[float]:
        """Return t unwrapped into the segment's parameter range if it lies there, else None"""
        if self.kind == 'line':
            return t if -slack <= t <= 1.0 + slack else None
        lo, hi = sorted((self.angle_start, self.angle_end))
        t = lo + math.fmod(t - lo, 2 * math.pi)
        if t < lo:
            t += 2 * math.pi
        if t <= hi + slack:
            return t
        if t - 2 * math.pi >= lo - slack:
            return t - 2 * math.pi
        return None

    def tangent(self, t: float) -> Point:
        if self.kind == 'line':
            ex, ey = self.p1[0] - self.p0[0], self.p1[1] - self.p0[1]
            norm = math.hypot(ex, ey)
            return (ex / norm, ey / norm)
        sign = 1.0 if self.angle_end > self.angle_start else -1.0
        tx, ty = -self.rx * math.sin(t), self.ry * math.cos(t)
        norm = math.hypot(tx, ty)
        return (sign * tx / norm, sign * ty / norm)

    def normal(self, t: float) -> Point:
        tx, ty = self.tangent(t)
        return (-ty, tx)

    def normal_at(self, point: Point) -> Point:
        """Normal at the parameter of a point on (or within rounding of) the segment; arcs clamp to their ends"""
        t = self.param_of(point)
        if self.kind == 'arc':
            t = self.contains_param(t, slack=1e-6)
            if t is None:
                near_start = math.dist(point, self.p0) < math.dist(point, self.p1)
                t = self.angle_start if near_start else self.angle_end
        return self.normal(t)

    def curvature(self, t: float = 0.0) -> float:
        """Unsigned curvature; 1/radius on circular arcs, 0 on lines"""
        if self.kind == 'line':
            return 0.0
        a, b = self.rx, self.ry
        return a * b / (a * a * math.sin(t) ** 2 + b * b * math.cos(t) ** 2) ** 1.5

    def length(self) -> float:
        if self.kind == 'line':
            return math.dist(self.p0, self.p1)
        if self.rx == self.ry:
            return self.rx * self.turning_angle
        ts = _linspace(self.angle_start, self.angle_end, 257)
        pts = [self.point_at(t) for t in ts]
        return sum(math.dist(p, q) for p, q in zip(pts[:-1], pts[1:]))

    def transformed(self, sx: float = 1.0, sy: float = 1.0, dx: float = 0.0, dy: float = 0.0) -> "BoundarySegment":
        """Image under (x, y) -> (sx·x + dx, sy·y + dy) with sx, sy > 0"""
        if sx <= 0 or sy <= 0:
            raise InvalidParam("segment scaling factors must be positive")
        if self.kind == 'line':
            return replace(
                self,
                p0=(sx * self.p0[0] + dx, sy * self.p0[1] + dy),
                p1=(sx * self.p1[0] + dx, sy * self.p1[1] + dy),
            )
        cx, cy = self.center
        return BoundarySegment.arc(
            (sx * cx + dx, sy * cy + dy),
            sx * self.rx,
            self.angle_start,
            self.angle_end,
            ry=sy * self.ry,
            period_index=self.period_index,
        )

    def intersect_ray(self, origin: Point, direction: Point, t_min: float) -> List[Tuple[float, float]]:
        """All (time, segment parameter) with time > t_min where origin + time·direction meets the segment"""
        px, py = origin
        dx, dy = direction
        if self.kind == 'line':
            ex, ey = self.p1[0] - self.p0[0], self.p1[1] - self.p0[1]
            denom = dx * ey - dy * ex
            if denom == 0.0:
                return []
            ax, ay = self.p0[0] - px, self.p0[1] - py
            time = (ax * ey - ay * ex) / denom
            s = (ax * dy - ay * dx) / denom
            slack = 1e-9 / math.hypot(ex, ey)
            if time > t_min and -slack <= s <= 1.0 + slack:
                return [(time, s)]
            return []

        cx, cy = self.center
        qx, qy = (px - cx) / self.rx, (py - cy) / self.ry
        vx, vy = dx / self.rx, dy / self.ry
        a = vx * vx + vy * vy
        b = 2.0 * (qx * vx + qy * vy)
        c = qx * qx + qy * qy - 1.0
        disc = b * b - 4.0 * a * c
        if disc < 0.0:
            return []
        root = math.sqrt(disc)
        # numerically stable pair of roots
        q = -0.5 * (b + math.copysign(root, b))
        candidates = [q / a, c / q] if q != 0.0 else [-b / (2.0 * a)]
        hits = []
        for time in sorted(candidates):
            time = _polish_quadratic(a, b, c, time)
            if time <= t_min:
                continue
            t = math.atan2(qy + time * vy, qx + time * vx)
            t = self.contains_param(t, slack=1e-9)
            if t is not None:
                hits.append((time, t))
        return hits

    def distance_to(self, point: Point) -> float:
        """Euclidean distance from a point to this segment"""
        if self.kind == 'line':
            s = min(1.0, max(0.0, self.param_of(point)))
            return math.dist(point, self.point_at(s))
        if self.rx == self.ry:
            t = self.contains_param(self.param_of(point))
            if t is not None:
                return abs(math.dist(point, self.center) - self.rx)
            return min(math.dist(point, self.p0), math.dist(point, self.p1))
        ts = _linspace(self.angle_start, self.angle_end, 129)
        best = min(ts, key=lambda t: math.dist(point, self.point_at(t)))
        return math.dist(point, self.point_at(best))

    def residual(self, point: Point) -> float:
        """Signed offset of a point from the curve carrying this segment, positive on the normal side"""
        if self.kind == 'line':
            nx, ny = self.normal(0.0)
            return (point[0] - self.p0[0]) * nx + (point[1] - self.p0[1]) * ny
        cx, cy = self.center
        level = math.hypot((point[0] - cx) / self.rx, (point[1] - cy) / self.ry)
        radius = min(self.rx, self.ry)
        return (1.0 - level) * radius if self.concave else (level - 1.0) * radius

    def to_dict(self) -> Dict:
        if self.kind == 'line':
            return {'kind': 'line', 'p0': list(self.p0), 'p1': list(self.p1), 'period_index': self.period_index}
        return {
            'kind': 'arc',
            'center': list(self.center),
            'rx': self.rx,
            'ry': self.ry,
            'angle_start': self.angle_start,
            'angle_end': self.angle_end,
            'concave': self.concave,
            'period_index': self.period_index,
        }

    @classmethod
    def from_dict(cls, data: Dict) -> "BoundarySegment":
        kind = data.get('kind')
        if kind == 'line':
            return cls.line(tuple(data['p0']), tuple(data['p1']), period_index=int(data.get('period_index', 0)))
        if kind == 'arc':
            rx = float(data.get('rx', data.get('radius', 0.0)))
            return cls.arc(
                tuple(data['center']),
                rx,
                float(data['angle_start']),
                float(data['angle_end']),
                ry=float(data.get('ry', rx)),
                period_index=int(data.get('period_index', 0)),
            )
        raise InvalidParam(f"unknown segment kind {kind!r}")


def _point(p) -> Point:
    return (float(p[0]), float(p[1]))


def _linspace(a: float, b: float, n: int) -> List[float]:
    return [a + (b - a) * i / (n - 1) for i in range(n)]


def _polish_quadratic(a: float, b: float, c: float, t: float) -> float:
    # one Newton step brings the residual to round-off
    deriv = 2.0 * a * t + b
    if deriv != 0.0:
        t -= (a * t * t + b * t + c) / deriv
    return t
