"""
Disk-with-satellites model: parameters, states, the kinetic-energy geometry of configuration space and the
smooth / no-slip collision matrices.

Configurations are y = (x1, x2, α) and velocities w = (v1, v2, ω). All angles and orthogonality use the
kinetic-energy inner product <w, w′> = m·v1·v1′ + m·v2·v2′ + J·ω·ω′.
"""

import logging
import math
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np

from ..errors import DegenerateAngle, InvalidParam

logger = logging.getLogger(__name__)

MIN_SATELLITES = 8
NORM_TOL = 1e-12
POLE_TOL = 1e-12

Vector3 = Tuple[float, float, float]


def satellite_count(eps: float) -> int:
    """N = max(8, round(2π·ε^(-1/3))), so ρ → 0 and ε^(1/2)/ρ → 0 as ε → 0"""
    if not eps > 0:
        raise InvalidParam(f"eps must be positive, got {eps}")
    return max(MIN_SATELLITES, int(round(2 * math.pi * eps ** (-1.0 / 3.0))))


@dataclass(frozen=True)
class DiskParams:
    """Unit disk of mass m and moment of inertia J carrying N satellites spaced ρ = 2π/N on its rim"""

    m: float = 1.0
    J: float = 1.0
    eps: float = 1.0
    N: Optional[int] = None

    def __post_init__(self):
        if not (self.m > 0 and self.J > 0):
            raise InvalidParam(f"mass and inertia must be positive, got m={self.m}, J={self.J}")
        if not self.eps > 0:
            raise InvalidParam(f"eps must be positive, got {self.eps}")
        if self.N is None:
            object.__setattr__(self, 'N', satellite_count(self.eps))
        if int(self.N) != self.N or self.N < MIN_SATELLITES:
            raise InvalidParam(f"satellite count must be an integer >= {MIN_SATELLITES}, got {self.N}")
        object.__setattr__(self, 'N', int(self.N))

    @property
    def rho(self) -> float:
        return 2 * math.pi / self.N

    @property
    def metric(self) -> np.ndarray:
        return np.array([self.m, self.m, self.J])

    @property
    def chi(self) -> np.ndarray:
        """Unit rolling direction (m + J)^(-1/2)·(-1, 0, 1)"""
        return np.array([-1.0, 0.0, 1.0]) / math.sqrt(self.m + self.J)

    @property
    def chi_perp(self) -> np.ndarray:
        return np.array([self.J, 0.0, self.m]) / math.sqrt(self.m * self.J * (self.m + self.J))

    @property
    def e2_hat(self) -> np.ndarray:
        return np.array([0.0, 1.0 / math.sqrt(self.m), 0.0])

    @property
    def compression(self) -> float:
        """Horizontal factor (1 + m/J)^(-1/2) of the foreshortened wall"""
        return 1.0 / math.sqrt(1.0 + self.m / self.J)

    def inner(self, a, b) -> float:
        return float(np.dot(self.metric * np.asarray(a, dtype=float), np.asarray(b, dtype=float)))

    def norm(self, a) -> float:
        return math.sqrt(self.inner(a, a))

    def normalize(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=float)
        return a / self.norm(a)


@dataclass(frozen=True)
class ConfigState:
    y: Vector3
    w: Vector3

    def __post_init__(self):
        object.__setattr__(self, 'y', tuple(float(v) for v in self.y))
        object.__setattr__(self, 'w', tuple(float(v) for v in self.w))

    def check(self, params: DiskParams, on_plane: bool = True) -> None:
        """Collision-law input: unit kinetic energy, y on P and w pointing away from the wall"""
        if abs(params.norm(self.w) - 1.0) > 1e-9:
            raise InvalidParam(f"velocity {self.w} does not have unit kinetic-energy norm")
        if on_plane and self.y[1] != 0.0:
            raise InvalidParam(f"configuration {self.y} is not on the plane x2 = 0")
        if on_plane and not self.w[1] > 0.0:
            raise InvalidParam(f"velocity {self.w} does not point away from the wall (v2 <= 0)")


@dataclass(frozen=True)
class TiltedState:
    """(y1, y3) on P in the (χ⊥, χ) frame; spherical velocity angles with pole χ"""

    y1: float
    y3: float
    theta: float
    psi: float

    def __post_init__(self):
        if not (0.0 < self.theta < math.pi and 0.0 < self.psi < math.pi):
            raise InvalidParam(f"theta and psi must lie in (0, pi), got ({self.theta}, {self.psi})")



def satellite_positions(y: Sequence[float], params: DiskParams) -> np.ndarray:
    """(N, 2) rim points S_k = (x1 + sin(α + kρ), x2 - cos(α + kρ))"""
    x1, x2, alpha = (float(v) for v in y)
    beta = alpha + params.rho * np.arange(params.N)
    return np.column_stack([x1 + np.sin(beta), x2 - np.cos(beta)])


def contact_normal(k, alpha_bar: float, params: DiskParams) -> np.ndarray:
    """
    Inward configuration-space normal for a satellite at rim angle alpha_bar touching a wall with unit normal k.
    Gradient (k1, k2, k1·cos ᾱ + k2·sin ᾱ) raised by the metric and normalized in kinetic energy.
    """
    k1, k2 = float(k[0]), float(k[1])
    torque = k1 * math.cos(alpha_bar) + k2 * math.sin(alpha_bar)
    n = np.array([k1 / params.m, k2 / params.m, torque / params.J])
    return params.normalize(n)


def reflect_velocity(w, n, params: DiskParams) -> np.ndarray:
    w = np.asarray(w, dtype=float)
    return w - 2.0 * params.inner(w, n) * np.asarray(n, dtype=float)


def rolling_momentum(w: Sequence[float], params: DiskParams) -> float:
    return -params.m * float(w[0]) + params.J * float(w[2])


def to_tilted(s: ConfigState, params: DiskParams) -> TiltedState:
    y, w = np.asarray(s.y), np.asarray(s.w)
    y1, y3 = params.inner(y, params.chi_perp), params.inner(y, params.chi)
    a, b, c = params.inner(w, params.chi_perp), params.inner(w, params.e2_hat), params.inner(w, params.chi)
    radius = math.hypot(a, b)
    if radius < POLE_TOL:
        raise DegenerateAngle(f"velocity {s.w} is parallel to the rolling axis; theta is undefined")
    psi = math.atan2(radius, c)
    theta = math.atan2(b, a)
    if not 0.0 < theta < math.pi:
        raise InvalidParam(f"velocity {s.w} does not point away from the wall")
    return TiltedState(y1, y3, theta, psi)


def from_tilted(t: TiltedState, params: DiskParams) -> ConfigState:
    y = t.y1 * params.chi_perp + t.y3 * params.chi
    s = math.sin(t.psi)
    w = math.cos(t.theta) * s * params.chi_perp + math.sin(t.theta) * s * params.e2_hat + math.cos(t.psi) * params.chi
    # x2 of χ⊥ and χ is zero exactly
    return ConfigState((y[0], 0.0, y[2]), tuple(w))


def collision_matrix(kind: str, params: DiskParams) -> np.ndarray:
    m, J = params.m, params.J
    if kind == 'smooth':
        return np.diag([1.0, -1.0, 1.0])
    if kind in ('no_slip', 'no-slip', 'noslip'):
        total = m + J
        return np.array(
            [
                [(m - J) / total, 0.0, -2.0 * J / total],
                [0.0, -1.0, 0.0],
                [-2.0 * m / total, 0.0, (J - m) / total],
            ]
        )
    raise ValueError(f"collision matrix kind {kind} is not valid: 'smooth', 'no_slip'")


def apply_collision_matrix(kind: str, u: Sequence[float], params: DiskParams) -> np.ndarray:
    """Actual post-collision velocity from the actual pre-collision velocity u"""
    return collision_matrix(kind, params) @ np.asarray(u, dtype=float)


def sample_lambda2(rng: np.random.Generator, params: DiskParams) -> ConfigState:
    """
    y uniform over one (ε, ρ) cell of P and w on S²₊ with density proportional to <w, ê₂>
    (cosine-weighted around ê₂ in the kinetic-energy orthonormal frame).
    """
    x1 = float(rng.uniform(0.0, params.eps))
    alpha = float(rng.uniform(0.0, params.rho))
    u1, u2 = rng.uniform(size=2)
    b = math.sqrt(1.0 - u1)
    r, phi = math.sqrt(u1), 2 * math.pi * u2
    w = r * math.cos(phi) * params.chi_perp + b * params.e2_hat + r * math.sin(phi) * params.chi
    return ConfigState((x1, 0.0, alpha), tuple(w))
