import math
from typing import List

import numpy as np

from .base import Atom, AtomicKernel, Kernel


class SpecularKernel(AtomicKernel):
    name = 'specular'

    def atoms(self, theta: float) -> List[Atom]:
        return [Atom(math.pi - theta, 1.0)]


class RetroKernel(AtomicKernel):
    name = 'retro'

    def atoms(self, theta: float) -> List[Atom]:
        return [Atom(theta, 1.0)]


class LambertianKernel(Kernel):
    """Outgoing density ½·sinθ′, independent of θ"""

    name = 'lambertian'

    def density(self, theta: float, theta_out: float) -> float:
        return 0.5 * math.sin(theta_out) if 0.0 < theta_out < math.pi else 0.0

    def sample(self, theta: float, rng: np.random.Generator) -> float:
        return float(self.sample_many(np.empty(1), rng)[0])

    def sample_many(self, thetas: np.ndarray, rng: np.random.Generator) -> np.ndarray:
        # inverse of the CDF (1 - cos θ′) / 2, kept off the endpoints
        theta_out = np.arccos(1.0 - 2.0 * rng.uniform(size=len(thetas)))
        return np.clip(theta_out, _LOW, _HIGH)


_LOW = float(np.nextafter(0.0, 1.0))
_HIGH = float(np.nextafter(math.pi, 0.0))
