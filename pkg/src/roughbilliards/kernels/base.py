import logging
import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Callable, List

import numpy as np

from ..errors import BoundaryCase, InvalidParam

logger = logging.getLogger(__name__)

# two atoms closer than this are the same outgoing angle
ATOM_MERGE_TOL = 1e-12
# BoundaryCase inputs are nudged by this much before sampling
BOUNDARY_JITTER = 1e-12


@dataclass(frozen=True)
class Atom:
    angle: float
    prob: float


class Kernel(ABC):
    """Markov transition law on reflection angles: θ -> θ′, both in (0, π)"""

    name: str = 'kernel'

    def atoms(self, theta: float) -> List[Atom]:
        """Point masses of the law at θ; empty for purely continuous kernels"""
        return []

    def density(self, theta: float, theta_out: float) -> float:
        """Density of the continuous part with respect to dθ′"""
        return 0.0

    def continuous_mass(self, theta: float) -> float:
        return 1.0 - sum(atom.prob for atom in self.atoms(theta))

    @property
    def is_atomic(self) -> bool:
        return False

    @abstractmethod
    def sample(self, theta: float, rng: np.random.Generator) -> float:
        """Draw θ′ for an incoming angle θ."""

    def sample_many(self, thetas: np.ndarray, rng: np.random.Generator) -> np.ndarray:
        return np.array([sample_kernel(self, float(t), rng) for t in np.asarray(thetas, dtype=float)])

    def __repr__(self):
        return f"{self.__class__.__name__}(name={self.name})"


class AtomicKernel(Kernel):
    """Kernel made only of atoms; sampling picks one atom by its probability"""

    @property
    def is_atomic(self) -> bool:
        return True

    def sample(self, theta: float, rng: np.random.Generator) -> float:
        atoms = self.atoms(theta)
        if len(atoms) == 1:
            return atoms[0].angle
        u = rng.uniform()
        acc = 0.0
        for atom in atoms:
            acc += atom.prob
            if u < acc:
                return atom.angle
        return atoms[-1].angle


class DeterministicKernel(AtomicKernel):
    """θ -> fn(θ) with probability one"""

    def __init__(self, fn: Callable[[float], float], name: str = 'deterministic'):
        self.fn = fn
        self.name = name

    def atoms(self, theta: float) -> List[Atom]:
        return [Atom(float(self.fn(theta)), 1.0)]


def merge_atoms(atoms: List[Atom], tol: float = ATOM_MERGE_TOL) -> List[Atom]:
    merged: List[Atom] = []
    for atom in sorted(atoms, key=lambda a: a.angle):
        if atom.prob <= 0.0:
            continue
        if merged and abs(merged[-1].angle - atom.angle) <= tol:
            merged[-1] = Atom(merged[-1].angle, merged[-1].prob + atom.prob)
        else:
            merged.append(atom)
    return merged


def check_theta(theta: float) -> None:
    if not 0.0 < theta < math.pi:
        raise InvalidParam(f"theta must lie strictly inside (0, pi), got {theta}")


def sample_kernel(kernel: Kernel, theta: float, rng: np.random.Generator) -> float:
    """θ′ drawn from kernel at θ. BoundaryCase angles are jittered by 1e-12 and sampled again."""
    check_theta(theta)
    try:
        return kernel.sample(theta, rng)
    except BoundaryCase:
        jittered = theta + BOUNDARY_JITTER if theta < math.pi / 2 else theta - BOUNDARY_JITTER
        logger.warning(f"{kernel.name}: boundary case at theta={theta!r}, sampling at {jittered!r}")
        return kernel.sample(jittered, rng)
