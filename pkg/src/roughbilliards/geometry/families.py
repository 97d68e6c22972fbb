"""Cell families at unit roughness scale, half-plane datum.

Each builder returns the oriented boundary of one period, running from (0, 0) to (period, 0),
together with the period length and the maximal depth below the interface line.
"""

import logging
import math
from dataclasses import replace
from typing import List, Tuple

from ..errors import MalformedCustom
from .segments import BoundarySegment
from .spec import WallSpec

logger = logging.getLogger(__name__)

Cell = Tuple[List[BoundarySegment], float, float]


def flat_cell(depth: float = 0.0) -> Cell:
    """A straight floor at the given depth below the interface"""
    return [BoundarySegment.line((0.0, -depth), (1.0, -depth))], 1.0, depth


def rect_cell(r: float) -> Cell:
    """Tops on [2k, 2k+1] at depth 0, crevices on (2k+1, 2k+2) at depth -r"""
    segments = [
        BoundarySegment.line((0.0, 0.0), (1.0, 0.0)),
        BoundarySegment.line((1.0, 0.0), (1.0, -r)),
        BoundarySegment.line((1.0, -r), (2.0, -r)),
        BoundarySegment.line((2.0, -r), (2.0, 0.0)),
    ]
    return segments, 2.0, r


def tri_cell(psi: float) -> Cell:
    """Peaks at the integers, a groove of opening angle psi with apex at x = 1/2"""
    depth = 0.5 / math.tan(psi / 2)
    segments = [
        BoundarySegment.line((0.0, 0.0), (0.5, -depth)),
        BoundarySegment.line((0.5, -depth), (1.0, 0.0)),
    ]
    return segments, 1.0, depth


def arc_cell(xi: float, axis_ratio: float = 1.0) -> Cell:
    """
    Focusing arc through (0, 0) and (1, 0) spanning the angle 2·xi, flattened vertically by
    axis_ratio (horizontal over vertical semi-axis); axis_ratio = 1 is the circular cell.
    """
    radius = 0.5 / math.sin(xi)
    center = (0.5, 0.5 / math.tan(xi) / axis_ratio)
    arc = BoundarySegment.arc(center, radius, -math.pi / 2 - xi, -math.pi / 2 + xi, ry=radius / axis_ratio)
    # pin the endpoints to the interface so periodic copies meet exactly
    arc = _pin_endpoints(arc, (0.0, 0.0), (1.0, 0.0))
    depth = 0.5 * math.tan(xi / 2) / axis_ratio
    return [arc], 1.0, depth


def custom_cell(spec: WallSpec) -> Cell:
    period = float(spec.params.get('period', 1.0))
    if not period > 0:
        raise MalformedCustom(f"custom period must be positive, got {period}")
    try:
        segments = [BoundarySegment.from_dict(item) for item in spec.params['segments']]
    except (KeyError, TypeError) as e:
        raise MalformedCustom(f"cannot parse custom segments: {e}") from e
    check_custom_chain(segments, period)
    depth = -min(y for segment in segments for _, y in _polyline(segment))
    return segments, period, max(depth, 0.0)


def check_custom_chain(segments: List[BoundarySegment], period: float, tol: float = 1e-12) -> None:
    """Connected chain from (0, 0) to (period, 0), below the interface, without self-intersections"""
    if math.dist(segments[0].p0, (0.0, 0.0)) > tol or math.dist(segments[-1].p1, (period, 0.0)) > tol:
        raise MalformedCustom("custom boundary must touch depth 0 at both period endpoints")
    for prev, nxt in zip(segments[:-1], segments[1:]):
        if math.dist(prev.p1, nxt.p0) > tol:
            raise MalformedCustom(f"custom segments are not connected at {prev.p1} / {nxt.p0}")

    polylines = [_polyline(segment) for segment in segments]
    for line in polylines:
        if any(y > tol for _, y in line):
            raise MalformedCustom("custom boundary leaves the datum band (rises above depth 0)")
        if any(x < -tol or x > period + tol for x, _ in line):
            raise MalformedCustom("custom boundary leaves the period strip")

    pieces = []
    for i, line in enumerate(polylines):
        pieces.extend((i, a, b) for a, b in zip(line[:-1], line[1:]))
    for m, (i, a, b) in enumerate(pieces):
        for j, c, d in pieces[m + 1 :]:
            if i == j or (j == i + 1 and c == b):
                continue
            if _pieces_cross(a, b, c, d):
                raise MalformedCustom(f"custom segments {i} and {j} overlap")


def _polyline(segment: BoundarySegment, n: int = 64):
    if segment.kind == 'line':
        return [segment.p0, segment.p1]
    span = segment.angle_end - segment.angle_start
    return [segment.point_at(segment.angle_start + span * k / n) for k in range(n + 1)]


def _pieces_cross(a, b, c, d) -> bool:
    def orient(p, q, r):
        return (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])

    o1, o2 = orient(a, b, c), orient(a, b, d)
    o3, o4 = orient(c, d, a), orient(c, d, b)
    if o1 * o2 < 0 and o3 * o4 < 0:
        return True
    # collinear overlap of positive length
    if o1 == 0 and o2 == 0:
        lo, hi = sorted((a, b))
        return max(lo, min(c, d)) < min(hi, max(c, d))
    return False


def _pin_endpoints(arc: BoundarySegment, p0, p1) -> BoundarySegment:
    return replace(arc, p0=p0, p1=p1)
