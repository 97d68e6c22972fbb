"""Focusing circular arcs spanning 2·xi per period.

A ray entering the bowl at the fraction X of the chord first hits the arc at the polar angle γ,
measured from the downward vertical through the center (positive toward X = 1):
γ = θ - arccos(X·cos(θ - ξ) + (1 - X)·cos(θ + ξ)).
Successive hits inside a circle advance by the constant angle Δ = 2(γ - θ) (mod 2π, in (-π, π]),
and each bounce turns the direction by the same Δ, so after N hits the exit angle is π + θ + N·Δ.
"""

import logging
import math

import numpy as np

from ..errors import InvalidParam, Singular
from ..utils import wrap_angle
from .base import Kernel, check_theta

logger = logging.getLogger(__name__)

# relative tolerance for a hit landing on the arc's endpoint
CORNER_TOL = 1e-11
TANGENCY_TOL = 1e-9


def first_hit_angle(X: float, theta: float, xi: float) -> float:
    arg = X * math.cos(theta - xi) + (1.0 - X) * math.cos(theta + xi)
    return theta - math.acos(min(1.0, max(-1.0, arg)))


def circ_arc_map(X: float, theta: float, xi: float) -> float:
    """Deterministic exit angle of the ray entering the bowl at chord fraction X"""
    check_theta(theta)
    if not 0 < xi <= math.pi / 2:
        raise InvalidParam(f"xi must lie in (0, pi/2], got {xi}")
    if not 0.0 <= X <= 1.0:
        raise InvalidParam(f"X must lie in [0, 1], got {X}")

    gamma = first_hit_angle(X, theta, xi)
    if abs(abs(gamma) - xi) < CORNER_TOL:
        raise Singular(f"ray enters at the arc endpoint (X={X})")
    delta = math.remainder(2.0 * (gamma - theta), 2 * math.pi)
    if delta == -math.pi:
        delta = math.pi
    # |sin(Δ/2)| is the cosine of the incidence angle
    if abs(math.sin(delta / 2)) < TANGENCY_TOL:
        raise Singular(f"tangential hit on the arc (X={X}, theta={theta})")

    room = (xi - gamma) if delta > 0 else (xi + gamma)
    ratio = room / abs(delta)
    if abs(ratio - round(ratio)) < CORNER_TOL * max(1.0, ratio):
        raise Singular(f"trajectory hits the arc endpoint (X={X}, theta={theta})")
    bounces = math.floor(ratio) + 1
    theta_out = wrap_angle(math.pi + theta + bounces * delta)
    if not 0.0 < theta_out < math.pi:
        raise Singular(f"exit angle {theta_out} does not point upward")
    return theta_out


def circ_arc_bounces(X: float, theta: float, xi: float) -> int:
    gamma = first_hit_angle(X, theta, xi)
    delta = math.remainder(2.0 * (gamma - theta), 2 * math.pi)
    room = (xi - gamma) if delta > 0 else (xi + gamma)
    return math.floor(room / abs(delta)) + 1


class CircKernel(Kernel):
    """Law of circ_arc_map(X, θ, ξ) with X uniform on [0, 1]; no atoms for generic θ"""

    name = 'circ'

    def __init__(self, xi: float, max_redraws: int = 100):
        if not 0 < xi <= math.pi / 2:
            raise InvalidParam(f"xi must lie in (0, pi/2], got {xi}")
        self.xi = float(xi)
        self.max_redraws = max_redraws

    def sample(self, theta: float, rng: np.random.Generator) -> float:
        for _ in range(self.max_redraws):
            try:
                return circ_arc_map(float(rng.uniform()), theta, self.xi)
            except Singular:
                continue
        raise Singular(f"no regular entry point found for theta={theta}")
