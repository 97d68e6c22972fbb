"""
Single collision events of the disk with the wall, seen as a point particle in configuration space.

collide follows the point (y, u) by free flight, detects the first time a satellite reaches the wall,
reflects u in the kinetic-energy metric about the contact normal and repeats until x2 returns to 0.
collide_cyl replaces the configuration space by the cylinder over the foreshortened wall, where the
motion along the rolling axis χ decouples from a planar billiard.
"""

import logging
import math
from dataclasses import dataclass
from functools import partial
from typing import List, Optional, Sequence

import numpy as np
from scipy.optimize import brentq

from ..billiard2d import trace
from ..errors import Capped, DegenerateAngle, Singular
from ..geometry import Wall, build_wall, foreshorten
from ..utils import DEFAULT_LIMITS, DEFAULT_TOLERANCES, Limits, Tolerances, parallel_map, sample_rng
from .params import (
    ConfigState,
    DiskParams,
    TiltedState,
    contact_normal,
    from_tilted,
    reflect_velocity,
    satellite_positions,
    to_tilted,
)

logger = logging.getLogger(__name__)

# smallest time step, relative to the wall scale over the satellite speed bound
MIN_STEP = 1e-11
MAX_STEPS_PER_FLIGHT = 10**6


@dataclass(frozen=True)
class CollisionOutcome:
    state: ConfigState
    result: Optional[ConfigState] = None
    bounces: int = 0
    status: str = 'returned'
    message: str = ''


def cylinder_base(wall: Wall, params: DiskParams) -> Wall:
    """Foreshortened wall with its datum on P, the base of the cylindrical approximation"""
    spec = foreshorten(wall.spec, params.m, params.J).with_changes(datum='half_plane')
    return build_wall(spec)


def collide_cyl(
    wall: Wall,
    params: DiskParams,
    s: ConfigState,
    limits: Limits = DEFAULT_LIMITS,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
    base: Optional[Wall] = None,
) -> ConfigState:
    return _collide_cyl(wall, params, s, limits, tolerances, base)[0]


def _collide_cyl(wall, params, s, limits, tolerances, base):
    s.check(params)
    base = base if base is not None else cylinder_base(wall, params)
    y, u = np.asarray(s.y), -np.asarray(s.w)
    a, b, c = params.inner(u, params.chi_perp), params.inner(u, params.e2_hat), params.inner(u, params.chi)
    planar = math.hypot(a, b)
    if planar < 1e-12:
        raise DegenerateAngle(f"velocity {s.w} is parallel to the rolling axis")

    scale = math.sqrt(params.m)
    y1, y3 = params.inner(y, params.chi_perp), params.inner(y, params.chi)
    log = trace(base, (y1 / scale, 0.0), (a / planar, b / planar), limits, tolerances)
    exit_x, _ = log.exit_position
    dx, dy = log.exit_direction
    flight_time = log.total_time * scale / planar

    y_out = (exit_x * scale) * params.chi_perp + (y3 + c * flight_time) * params.chi
    w_out = planar * dx * params.chi_perp + planar * dy * params.e2_hat + c * params.chi
    return ConfigState((y_out[0], 0.0, y_out[2]), tuple(w_out)), log.bounces


def collide(
    wall: Wall,
    params: DiskParams,
    s: ConfigState,
    limits: Limits = DEFAULT_LIMITS,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> ConfigState:
    """Return state (y′, w′) on P of the trajectory started at (y, -w); raises Singular or Capped"""
    return _collide(wall, params, s, limits, tolerances)[0]


def _collide(wall, params, s, limits, tolerances):
    s.check(params)
    y = np.asarray(s.y, dtype=float)
    u = -np.asarray(s.w, dtype=float)
    total_time, bounces = 0.0, 0
    while True:
        hit = _next_contact(wall, params, y, u, tolerances)
        if hit is None:
            t_exit = max(-y[1] / u[1], 0.0)
            total_time += t_exit
            y = y + t_exit * u
            if total_time > limits.max_time:
                raise Capped(f"collision exceeded max_time={limits.max_time}")
            return ConfigState((y[0], 0.0, y[2]), tuple(u)), bounces
        t_hit, normal = hit
        y = y + t_hit * u
        u = reflect_velocity(u, normal, params)
        total_time += t_hit
        bounces += 1
        if bounces > limits.max_bounces:
            raise Capped(f"collision exceeded max_bounces={limits.max_bounces}")
        if total_time > limits.max_time:
            raise Capped(f"collision exceeded max_time={limits.max_time}")


def _clearance(wall: Wall, params: DiskParams, y: np.ndarray, u: np.ndarray, t: float) -> np.ndarray:
    return wall.signed_clearance(satellite_positions(y + t * u, params))


def _next_contact(wall: Wall, params: DiskParams, y: np.ndarray, u: np.ndarray, tol: Tolerances):
    """(time, configuration normal) of the next contact, or None when the flight reaches P first"""
    bound = math.hypot(u[0], u[1]) + abs(u[2])
    h_min = MIN_STEP * wall.scale / bound
    t_exit = -y[1] / u[1] if u[1] > 0 else math.inf
    t = 0.0
    clear = _clearance(wall, params, y, u, t)
    for _ in range(MAX_STEPS_PER_FLIGHT):
        if t >= t_exit:
            return None
        t_next = min(t + max(float(clear.min()) / bound, h_min), t_exit)
        clear_next = _clearance(wall, params, y, u, t_next)
        touching = np.flatnonzero(clear_next < 0.0)
        if len(touching):
            return _resolve_contact(wall, params, y, u, t, t_next, touching, tol)
        t, clear = t_next, clear_next
    raise Capped(f"no contact or return to P after {MAX_STEPS_PER_FLIGHT} steps")


def _resolve_contact(wall, params, y, u, t_lo, t_hi, touching, tol: Tolerances):
    roots = []
    for k in touching:

        def f(tau, k=k):
            return float(_clearance(wall, params, y, u, tau)[k])

        if f(t_lo) < 0.0:
            raise Singular(f"satellite {k} is inside the wall at the start of a flight")
        roots.append((brentq(f, t_lo, t_hi, xtol=1e-16, rtol=4 * np.finfo(float).eps), int(k)))
    roots.sort()
    if len(roots) > 1 and roots[1][0] - roots[0][0] <= tol.endpoint * max(1.0, roots[0][0]):
        raise Singular(f"satellites {roots[0][1]} and {roots[1][1]} touch the wall simultaneously")
    t_hit, k = roots[0]

    beta = y[2] + t_hit * u[2] + k * params.rho
    point = tuple(satellite_positions(y + t_hit * u, params)[k])
    segment, _ = wall.nearest_segment(point)
    t_hit, point = _polish_on_segment(segment, params, y, u, k, t_lo, t_hi, t_hit, point)
    normal_2d = _wall_normal(wall, segment, point, tol)

    normal = contact_normal(normal_2d, beta, params)
    approach = params.inner(u, normal)
    if approach > -tol.tangency * params.norm(u):
        raise Singular(f"tangential contact of satellite {k} (approach speed {approach:.3e})")
    return t_hit, normal


def _polish_on_segment(segment, params, y, u, k, t_lo, t_hi, t_hit, point):
    """Refine the contact time on the exact curve of the touched segment when it brackets a root"""

    def g(tau):
        return segment.residual(tuple(satellite_positions(y + tau * u, params)[k]))

    g_lo, g_hi = g(t_lo), g(t_hi)
    if g_lo > 0.0 > g_hi:
        t_hit = brentq(g, t_lo, t_hi, xtol=1e-16, rtol=4 * np.finfo(float).eps)
        point = tuple(satellite_positions(y + t_hit * u, params)[k])
    return t_hit, point


def _wall_normal(wall: Wall, segment, point, tol: Tolerances):
    """Unit wall normal at a contact point; Singular at corners where the boundary normal jumps"""
    reach = tol.endpoint * max(wall.scale, 1.0) * 10.0
    normals = []
    k, _ = wall.reduce(point[0])
    for j in (k - 1, k, k + 1):
        for other in wall.segments(j):
            if other.distance_to(point) <= reach:
                normals.append(other.normal_at(point))
    if not normals:
        normals.append(segment.normal_at(point))
    first = normals[0]
    for n in normals[1:]:
        if math.hypot(n[0] - first[0], n[1] - first[1]) > 1e-9:
            raise Singular(f"contact at a wall corner near {point}")
    return first


def state_from_angles(x1: float, alpha: float, theta: float, psi: float, params: DiskParams) -> ConfigState:
    """Collision-law input at configuration (x1, 0, alpha) with tilted velocity angles (θ, ψ)"""
    y = np.array([x1, 0.0, alpha])
    tilted = TiltedState(params.inner(y, params.chi_perp), params.inner(y, params.chi), theta, psi)
    state = from_tilted(tilted, params)
    return ConfigState((x1, 0.0, alpha), state.w)


def run_collide(
    wall: Wall,
    params: DiskParams,
    s: ConfigState,
    cyl: bool = False,
    limits: Limits = DEFAULT_LIMITS,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
    base: Optional[Wall] = None,
) -> CollisionOutcome:
    """collide / collide_cyl that reports Singular, Capped and degenerate inputs as a status"""
    try:
        if cyl:
            result, bounces = _collide_cyl(wall, params, s, limits, tolerances, base)
        else:
            result, bounces = _collide(wall, params, s, limits, tolerances)
    except (Singular, DegenerateAngle) as e:
        return CollisionOutcome(s, status='singular', message=str(e))
    except Capped as e:
        return CollisionOutcome(s, status='capped', message=str(e))
    return CollisionOutcome(s, result, bounces)


def _angle_sample(index, wall, params, theta, psi, seed, cyl, limits, base):
    rng = sample_rng(seed, index)
    x1, alpha = float(rng.uniform(0.0, wall.period)), float(rng.uniform(0.0, params.rho))
    return run_collide(wall, params, state_from_angles(x1, alpha, theta, psi, params), cyl, limits, base=base)


def _given_sample(state, wall, params, cyl, limits, base):
    return run_collide(wall, params, state, cyl, limits, base=base)


def collide_at_angles(
    wall: Wall,
    params: DiskParams,
    theta: float,
    psi: float,
    n: int,
    seed: int,
    cyl: bool = False,
    limits: Limits = DEFAULT_LIMITS,
    progress: bool = False,
) -> List[CollisionOutcome]:
    """n collisions at fixed (θ, ψ) with (x1, α) uniform over one (ε, ρ) cell; sample i uses substream i"""
    base = cylinder_base(wall, params) if cyl else None
    fn = partial(
        _angle_sample, wall=wall, params=params, theta=theta, psi=psi, seed=seed, cyl=cyl, limits=limits, base=base
    )
    return parallel_map(fn, range(n), desc='collide', progress=progress)


def collide_states(
    wall: Wall,
    params: DiskParams,
    states: Sequence[ConfigState],
    cyl: bool = False,
    limits: Limits = DEFAULT_LIMITS,
    progress: bool = False,
) -> List[CollisionOutcome]:
    base = cylinder_base(wall, params) if cyl else None
    fn = partial(_given_sample, wall=wall, params=params, cyl=cyl, limits=limits, base=base)
    return parallel_map(fn, list(states), desc='collide', progress=progress)


def outcome_angles(outcome: CollisionOutcome, params: DiskParams):
    """(θ, ψ, θ′, ψ′) of a returned outcome"""
    before, after = to_tilted(outcome.state, params), to_tilted(outcome.result, params)
    return before.theta, before.psi, after.theta, after.psi
