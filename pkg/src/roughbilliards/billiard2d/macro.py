import logging
import math
from dataclasses import dataclass
from functools import partial
from typing import List, Optional, Sequence

import numpy as np

from ..errors import InvalidParam, Singular
from ..geometry import Wall
from ..utils import DEFAULT_LIMITS, DEFAULT_TOLERANCES, Limits, Tolerances, parallel_map, sample_rng
from .trace import trace

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ReflState:
    """(x, θ) on the interface line; the incoming velocity points along angle π + θ"""

    x: float
    theta: float

    def __post_init__(self):
        if not 0.0 < self.theta < math.pi:
            raise InvalidParam(f"theta must lie strictly inside (0, pi), got {self.theta}")

    @property
    def incoming(self):
        return (-math.cos(self.theta), -math.sin(self.theta))


@dataclass(frozen=True)
class MacroOutcome:
    x: float
    theta: float
    x_out: float = math.nan
    theta_out: float = math.nan
    bounces: int = 0
    status: str = 'returned'


def macro_reflection(
    wall: Wall, s: ReflState, limits: Limits = DEFAULT_LIMITS, tolerances: Tolerances = DEFAULT_TOLERANCES
) -> ReflState:
    """Interface re-crossing state of the trajectory entering at s; raises Singular or Capped"""
    log = trace(wall, wall.from_unit((s.x / wall.scale, 0.0)), s.incoming, limits, tolerances)
    return _returned_state(log)


def _returned_state(log) -> ReflState:
    dx, dy = log.exit_direction
    theta = math.atan2(dy, dx)
    if not 0.0 < theta < math.pi:
        raise Singular(f"exit direction {log.exit_direction} does not point into the upper half plane")
    return ReflState(log.exit_position[0], theta)


def run_macro(
    wall: Wall, s: ReflState, limits: Limits = DEFAULT_LIMITS, tolerances: Tolerances = DEFAULT_TOLERANCES
) -> MacroOutcome:
    """macro_reflection that reports Singular/Capped as a status instead of raising"""
    log = trace(wall, wall.from_unit((s.x / wall.scale, 0.0)), s.incoming, limits, tolerances, strict=False)
    if log.terminal != 'returned':
        return MacroOutcome(s.x, s.theta, bounces=log.bounces, status=log.terminal)
    try:
        out = _returned_state(log)
    except Singular:
        return MacroOutcome(s.x, s.theta, bounces=log.bounces, status='singular')
    return MacroOutcome(s.x, s.theta, out.x, out.theta, log.bounces, 'returned')


def sample_lambda1(rng: np.random.Generator, period: float, size: Optional[int] = None):
    """x uniform over one period, θ with density ½·sinθ (the normalized Λ¹ measure)"""
    x = rng.uniform(0.0, period, size=size)
    theta = np.arccos(1.0 - 2.0 * rng.uniform(0.0, 1.0, size=size))
    return x, theta


def _uniform_x_sample(index: int, wall: Wall, theta: float, seed: int, limits: Limits) -> MacroOutcome:
    rng = sample_rng(seed, index)
    x = float(rng.uniform(0.0, wall.period))
    return run_macro(wall, ReflState(x, theta), limits)


def _lambda1_sample(index: int, wall: Wall, seed: int, limits: Limits) -> MacroOutcome:
    rng = sample_rng(seed, index)
    x, theta = sample_lambda1(rng, wall.period)
    theta = min(max(float(theta), 1e-12), math.pi - 1e-12)
    return run_macro(wall, ReflState(float(x), theta), limits)


def _given_sample(state: ReflState, wall: Wall, limits: Limits) -> MacroOutcome:
    return run_macro(wall, state, limits)


def reflect_uniform(
    wall: Wall, theta: float, n: int, seed: int, limits: Limits = DEFAULT_LIMITS, progress: bool = False
) -> List[MacroOutcome]:
    """n macro reflections at fixed θ with x uniform over one period; sample i uses substream i"""
    fn = partial(_uniform_x_sample, wall=wall, theta=theta, seed=seed, limits=limits)
    return parallel_map(fn, range(n), desc='reflect', progress=progress)


def reflect_lambda1(
    wall: Wall, n: int, seed: int, limits: Limits = DEFAULT_LIMITS, progress: bool = False
) -> List[MacroOutcome]:
    """n macro reflections with (x, θ) drawn from Λ¹ restricted to one period"""
    fn = partial(_lambda1_sample, wall=wall, seed=seed, limits=limits)
    return parallel_map(fn, range(n), desc='reflect', progress=progress)


def reflect_states(
    wall: Wall, states: Sequence[ReflState], limits: Limits = DEFAULT_LIMITS, progress: bool = False
) -> List[MacroOutcome]:
    fn = partial(_given_sample, wall=wall, limits=limits)
    return parallel_map(fn, list(states), desc='reflect', progress=progress)


def count_status(outcomes: Sequence[MacroOutcome]) -> dict:
    counts = {'returned': 0, 'singular': 0, 'capped': 0}
    for outcome in outcomes:
        counts[outcome.status] = counts.get(outcome.status, 0) + 1
    return counts
