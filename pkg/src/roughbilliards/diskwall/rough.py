"""Rough collision laws in product form and the clustering of simulated collisions around them"""

import logging
import math
from dataclasses import dataclass
from typing import Callable, List, Sequence

import numpy as np

from ..kernels import Kernel, sample_kernel
from .params import ConfigState, DiskParams, TiltedState, apply_collision_matrix, from_tilted, to_tilted

logger = logging.getLogger(__name__)

CollisionLaw = Callable[[ConfigState, np.random.Generator], ConfigState]

# share of outgoing velocities inside the cluster radius
CLUSTER_QUANTILE = 0.5


def rough_collision_sample(kernel: Kernel, t: TiltedState, rng: np.random.Generator) -> TiltedState:
    """Position kept, θ′ drawn from the kernel, ψ′ = π - ψ"""
    theta_out = sample_kernel(kernel, t.theta, rng)
    return TiltedState(t.y1, t.y3, theta_out, math.pi - t.psi)


def rough_collision_law(kernel: Kernel, params: DiskParams) -> CollisionLaw:
    """The law as a map on configuration states, through the tilted coordinates"""

    def law(s: ConfigState, rng: np.random.Generator) -> ConfigState:
        out = from_tilted(rough_collision_sample(kernel, to_tilted(s, params), rng), params)
        # position is unchanged; the frame round trip would only add rounding
        return ConfigState(s.y, out.w)

    return law


@dataclass
class ClusterSummary:
    """Distances of outgoing velocities to the nearer of A_smooth·u and A_no-slip·u"""

    distances: np.ndarray
    specular: np.ndarray

    @property
    def n(self) -> int:
        return len(self.distances)

    @property
    def radius(self) -> float:
        """Distance within which CLUSTER_QUANTILE of the outgoing velocities lie"""
        return float(np.quantile(self.distances, CLUSTER_QUANTILE)) if self.n else math.nan

    @property
    def max_distance(self) -> float:
        return float(self.distances.max()) if self.n else math.nan

    @property
    def specular_frequency(self) -> float:
        return float(self.specular.mean()) if self.n else math.nan

    def to_dict(self):
        return {
            'n': self.n,
            'radius': self.radius,
            'max_distance': self.max_distance,
            'specular_frequency': self.specular_frequency,
        }


def cluster_velocities(
    inputs: Sequence[ConfigState], outputs: Sequence[ConfigState], params: DiskParams
) -> ClusterSummary:
    """For each pair, the actual incoming velocity is u = -w and the candidates are A_smooth·u, A_no-slip·u"""
    if len(inputs) != len(outputs):
        raise ValueError(f"got {len(inputs)} inputs but {len(outputs)} outputs")
    distances: List[float] = []
    specular: List[bool] = []
    for before, after in zip(inputs, outputs):
        u = -np.asarray(before.w, dtype=float)
        w_out = np.asarray(after.w, dtype=float)
        d_smooth = params.norm(w_out - apply_collision_matrix('smooth', u, params))
        d_no_slip = params.norm(w_out - apply_collision_matrix('no_slip', u, params))
        distances.append(min(d_smooth, d_no_slip))
        specular.append(d_smooth <= d_no_slip)
    return ClusterSummary(np.asarray(distances, dtype=float), np.asarray(specular, dtype=bool))
