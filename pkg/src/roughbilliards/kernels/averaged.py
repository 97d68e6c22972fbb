import logging
import math
from typing import List, Union

import numpy as np

from ..billiard2d import ReflState, count_status, reflect_uniform, run_macro
from ..errors import Singular, TooManySingular
from ..geometry import WallSpec, build_wall
from ..stats.empirical import EmpiricalDist
from ..utils import DEFAULT_LIMITS, Limits
from .base import Atom, Kernel, check_theta

logger = logging.getLogger(__name__)

MAX_EXCLUDED_FRACTION = 0.01
# samples closer than this belong to the same atom
CLUSTER_GAP = 1e-9


def averaged_kernel(
    spec: WallSpec,
    theta: float,
    n: int,
    seed: int = 0,
    limits: Limits = DEFAULT_LIMITS,
    max_excluded: float = MAX_EXCLUDED_FRACTION,
    progress: bool = False,
) -> EmpiricalDist:
    """
    Empirical law of θ′ over n macro reflections at incidence θ with x uniform over one period.
    Singular and capped trajectories are dropped and counted in excluded_count.
    """
    check_theta(theta)
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    wall = build_wall(spec)
    outcomes = reflect_uniform(wall, theta, n, seed, limits, progress=progress)
    counts = count_status(outcomes)
    excluded = n - counts['returned']
    if excluded:
        logger.warning(f"{spec.family}: excluded {counts['singular']} singular, {counts['capped']} capped of {n}")
    if excluded / n > max_excluded:
        raise TooManySingular(f"{excluded} of {n} samples were singular or capped (limit {max_excluded:.0%})")
    theta_out = [o.theta_out for o in outcomes if o.status == 'returned']
    return EmpiricalDist(np.asarray(theta_out), excluded, seed)


def empirical_atoms(dist: EmpiricalDist, gap: float = CLUSTER_GAP) -> List[Atom]:
    """Observed atoms of an averaged kernel: cluster means with their frequencies"""
    return [Atom(center, freq) for center, _, freq in dist.clusters(gap)]


class AveragedKernel(Kernel):
    """Kernel sampled directly from macro reflections on a wall; one trajectory per draw"""

    name = 'averaged'

    def __init__(self, spec: Union[WallSpec, dict], limits: Limits = DEFAULT_LIMITS, max_redraws: int = 100):
        self.spec = spec if isinstance(spec, WallSpec) else WallSpec(**spec)
        self.wall = build_wall(self.spec)
        self.limits = limits
        self.max_redraws = max_redraws

    def sample(self, theta: float, rng: np.random.Generator) -> float:
        for _ in range(self.max_redraws):
            start = float(rng.uniform(0.0, self.wall.period))
            outcome = run_macro(self.wall, ReflState(start, theta), self.limits)
            if outcome.status == "returned":
                return outcome.theta_out
        raise Singular(f"no regular macro reflection found at theta={theta}")


def atom_mass_error(dist: EmpiricalDist, atoms: List[Atom], tol: float = 1e-6) -> float:
    """Largest |observed frequency - atom probability| over the analytic atoms"""
    if not atoms:
        return math.nan
    return max(abs(dist.mass_near(atom.angle, tol) - atom.prob) for atom in atoms)
