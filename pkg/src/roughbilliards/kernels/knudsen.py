"""
Transport along a planar channel of unit width whose two walls reflect with a given kernel.
Between wall hits the particle moves at unit speed; a flight leaving the wall at angle θ′ covers
cotθ′ along the axis in time 1/sinθ′. The walls face each other, so the next incidence angle is π - θ′.
"""

import logging
import math
from dataclasses import dataclass
from functools import partial
from typing import List, Optional

import numpy as np

from ..errors import Capped, InvalidParam
from ..utils import parallel_map, sample_rng
from .base import Kernel, sample_kernel

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ExitTime:
    time: float
    bounces: int
    side: str = 'entrance'


def knudsen_exit_time(
    kernel: Kernel,
    L: float,
    rng: np.random.Generator,
    theta0: Optional[float] = None,
    max_bounces: int = 10**6,
) -> ExitTime:
    """
    First time the axial position leaves [0, L] for a particle entering at 0.
    theta0 is the first flight's angle from the axis; by default it is drawn with density ½·sinθ on (0, π/2).
    """
    if L < 0:
        raise InvalidParam(f"L must be non-negative, got {L}")
    if L == 0:
        return ExitTime(0.0, 0)
    if theta0 is None:
        theta0 = float(np.arccos(1.0 - rng.uniform()))
        theta0 = min(max(theta0, 1e-12), math.pi / 2)
    elif not 0.0 < theta0 < math.pi:
        raise InvalidParam(f"theta0 must lie in (0, pi), got {theta0}")

    x, time, theta = 0.0, 0.0, float(theta0)
    for bounces in range(max_bounces + 1):
        step, flight = math.cos(theta) / math.sin(theta), 1.0 / math.sin(theta)
        target = x + step
        if target < 0.0 or target > L:
            edge = 0.0 if target < 0.0 else L
            time += flight * (edge - x) / step
            return ExitTime(time, bounces, 'entrance' if edge == 0.0 else 'exit')
        x, time = target, time + flight
        if bounces == max_bounces:
            break
        theta = sample_kernel(kernel, math.pi - theta, rng)
    raise Capped(f"particle still in the channel after {max_bounces} bounces (x={x})")


def _exit_sample(index: int, kernel: Kernel, L: float, seed: int, theta0: Optional[float], max_bounces: int):
    try:
        return knudsen_exit_time(kernel, L, sample_rng(seed, index), theta0, max_bounces)
    except Capped:
        return None


def knudsen_runs(
    kernel: Kernel,
    L: float,
    runs: int,
    seed: int,
    theta0: Optional[float] = None,
    max_bounces: int = 10**6,
    progress: bool = False,
) -> List[Optional[ExitTime]]:
    """Independent exit times, one substream per run; capped runs come back as None"""
    fn = partial(_exit_sample, kernel=kernel, L=L, seed=seed, theta0=theta0, max_bounces=max_bounces)
    return parallel_map(fn, range(runs), desc='knudsen', progress=progress)
