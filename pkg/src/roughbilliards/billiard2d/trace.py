"""Planar ray tracing against a periodic wall.

All intersection work is done at unit roughness scale, where the interface line is y = 0 and the
wall lies in [-depth, 0]; positions and flight times are reported in physical units.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from ..errors import Capped, NotIncoming, Singular
from ..geometry import Wall
from ..utils import DEFAULT_LIMITS, DEFAULT_TOLERANCES, Limits, Tolerances

logger = logging.getLogger(__name__)

Vector = Tuple[float, float]

# roots closer than this (unit lengths) belong to the point just reflected from
T_MIN = 1e-10
# a grazing ray may not cross more periods than this before it is declared singular
MAX_PERIOD_SCAN = 10**5
# neighbouring segments whose normals agree this closely meet in a smooth seam
SEAM_TOL = 1e-9


def reflect(direction: Vector, normal: Vector, tol: float = 1e-12) -> Vector:
    """Specular reflection d - 2<d, n> n of an incoming unit direction"""
    dx, dy = direction
    nx, ny = normal
    if abs(math.hypot(dx, dy) - 1.0) > tol or abs(math.hypot(nx, ny) - 1.0) > tol:
        raise ValueError(f"reflect expects unit vectors, got |d|={math.hypot(dx, dy)}, |n|={math.hypot(nx, ny)}")
    dot = dx * nx + dy * ny
    if dot >= 0.0:
        raise NotIncoming(f"direction {direction} is not incoming for normal {normal} (<d, n> = {dot})")
    rx, ry = dx - 2.0 * dot * nx, dy - 2.0 * dot * ny
    norm = math.hypot(rx, ry)
    return (rx / norm, ry / norm)


@dataclass(frozen=True)
class Event:
    position: Vector
    incoming: Vector
    outgoing: Vector
    segment_id: Tuple[int, int]
    flight_time: float


@dataclass
class TrajectoryLog:
    events: List[Event] = field(default_factory=list)
    terminal: str = 'running'
    exit_position: Optional[Vector] = None
    exit_direction: Optional[Vector] = None
    total_time: float = 0.0
    message: str = ''

    @property
    def bounces(self) -> int:
        return len(self.events)


@dataclass
class _Hit:
    time: float
    param: float
    period_index: int
    segment_index: int


def trace(
    wall: Wall,
    pos: Vector,
    direction: Vector,
    limits: Limits = DEFAULT_LIMITS,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
    strict: bool = True,
) -> TrajectoryLog:
    """
    Follow a ray from `pos` (inside the billiard domain, or on the interface heading down) until it
    crosses the interface line upward. With strict=True a singular or capped trajectory raises;
    otherwise the log is returned with terminal 'singular' or 'capped'.
    """
    log = TrajectoryLog()
    try:
        _run(wall, pos, direction, limits, tolerances, log)
    except (Singular, Capped) as e:
        log.terminal = 'singular' if isinstance(e, Singular) else 'capped'
        log.message = str(e)
        if strict:
            raise
    return log


def _run(wall: Wall, pos: Vector, direction: Vector, limits: Limits, tol: Tolerances, log: TrajectoryLog) -> None:
    dx, dy = direction
    norm = math.hypot(dx, dy)
    if abs(norm - 1.0) > 1e-12:
        raise ValueError(f"direction must be a unit vector, got norm {norm}")
    px, py = wall.to_unit(pos)
    if py > 1e-12 and dy >= 0:
        raise ValueError(f"start point {pos} lies above the interface and does not head down")

    # restart rays on the interface from y = 1 so tops lying on the interface are found at positive time
    virtual = 0.0
    if py >= 0.0 and dy < 0.0:
        virtual = (py - 1.0) / dy
        px, py = px - virtual * dx, 1.0

    scale = wall.scale
    elapsed = 0.0
    last: Optional[Tuple[int, int]] = None
    while True:
        hit = _first_hit(wall, px, py, dx, dy, last, tol)

        if dy > 0.0:
            t_exit = max(0.0, -py / dy)
            if hit is None or hit.time > t_exit:
                elapsed += (t_exit - virtual) * scale
                log.exit_position = wall.from_unit((px + t_exit * dx, 0.0))
                log.exit_direction = (dx, dy)
                log.total_time = elapsed
                log.terminal = 'returned'
                return
        if hit is None:
            raise Singular(f"ray from {wall.from_unit((px, py))} along {(dx, dy)} never meets the wall")

        flight = (hit.time - virtual) * scale
        virtual = 0.0
        elapsed += flight
        if elapsed > limits.max_time:
            raise Capped(f"max_time {limits.max_time} exceeded after {len(log.events)} bounces")

        segment = wall.unit_segments[hit.segment_index]
        shift = hit.period_index * wall.unit_period
        qx, qy = px + hit.time * dx, py + hit.time * dy
        local = (qx - shift, qy)
        nx, ny = segment.normal(hit.param)
        if min(math.dist(local, segment.p0), math.dist(local, segment.p1)) < tol.endpoint:
            _check_seam(wall, hit.period_index, hit.segment_index, (qx, qy), (nx, ny), tol)
        cos = dx * nx + dy * ny
        if abs(cos) < tol.tangency:
            raise Singular(f"tangential hit at {wall.from_unit((qx, qy))} (<d, n> = {cos})")
        if cos > 0.0:
            raise Singular(f"ray reached the back of a segment at {wall.from_unit((qx, qy))}")

        outgoing = reflect((dx, dy), (nx, ny))
        log.events.append(
            Event(
                position=wall.from_unit((qx, qy)),
                incoming=(dx, dy),
                outgoing=outgoing,
                segment_id=(hit.period_index, hit.segment_index),
                flight_time=flight,
            )
        )
        if len(log.events) > limits.max_bounces:
            raise Capped(f"max_bounces {limits.max_bounces} exceeded")
        px, py = qx, qy
        dx, dy = outgoing
        last = (hit.period_index, hit.segment_index)


def _first_hit(
    wall: Wall, px: float, py: float, dx: float, dy: float, last: Optional[Tuple[int, int]], tol: Tolerances
) -> Optional[_Hit]:
    period = wall.unit_period
    # time window during which the ray is inside the band [-depth, 0]
    if dy < 0.0:
        t_lo, t_hi = max(0.0, py / -dy), (py + wall.unit_depth) / -dy
    elif dy > 0.0:
        t_lo, t_hi = 0.0, max(0.0, -py / dy)
    elif py >= 0.0:
        return None
    else:
        t_lo, t_hi = 0.0, math.inf

    step = 1 if dx >= 0.0 else -1
    k_lo = math.floor((px + t_lo * dx) / period)
    if math.isfinite(t_hi):
        k_hi = math.floor((px + t_hi * dx) / period)
        count = abs(k_hi - k_lo) + 3
    else:
        count = MAX_PERIOD_SCAN
    if count > MAX_PERIOD_SCAN:
        raise Singular(f"grazing ray crosses more than {MAX_PERIOD_SCAN} periods inside the wall band")

    hits: List[_Hit] = []
    found_at = None
    for i in range(-1, count):
        k = k_lo + step * i
        if found_at is not None and abs(k - found_at) > 1:
            break
        origin = (px - k * period, py)
        for index, segment in enumerate(wall.unit_segments):
            if (k, index) == last and segment.kind == 'line':
                continue
            for time, param in segment.intersect_ray(origin, (dx, dy), T_MIN):
                hits.append(_Hit(time, param, k, index))
        if hits and found_at is None:
            found_at = k
    if not hits:
        return None
    hits.sort(key=lambda h: h.time)
    first = hits[0]
    for second in hits[1:]:
        if second.time - first.time >= tol.endpoint:
            break
        if (first.period_index, first.segment_index) == (second.period_index, second.segment_index):
            continue
        n1 = wall.unit_segments[first.segment_index].normal(first.param)
        n2 = wall.unit_segments[second.segment_index].normal(second.param)
        if math.hypot(n1[0] - n2[0], n1[1] - n2[1]) > SEAM_TOL:
            raise Singular("two segments hit at the same time (corner)")
    return first


def _check_seam(wall: Wall, k: int, index: int, point: Vector, normal: Vector, tol: Tolerances) -> None:
    """A hit at a segment end is a corner unless every segment meeting there has the same normal"""
    period = wall.unit_period
    for j in (k - 1, k, k + 1):
        local = (point[0] - j * period, point[1])
        for other_index, other in enumerate(wall.unit_segments):
            if (j, other_index) == (k, index) or other.distance_to(local) >= tol.endpoint:
                continue
            nx, ny = other.normal_at(local)
            if math.hypot(nx - normal[0], ny - normal[1]) > SEAM_TOL:
                raise Singular(f"hit within {tol.endpoint} of a corner at {wall.from_unit(point)}")
