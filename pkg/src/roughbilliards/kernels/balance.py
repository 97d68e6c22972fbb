"""
Detailed balance of angle kernels with respect to ½·sinθ dθ.

A kernel P is symmetric when E[f(θ, θ′)] = E[f(θ′, θ)] for every test function f, where θ has density
½·sinθ and θ′ ~ P(θ, ·). The defect reported here is the difference of the two sides under that
probability normalization.
"""

import logging
import math
from typing import Callable, Sequence, Tuple

import numpy as np

from .base import Kernel, check_theta, sample_kernel

logger = logging.getLogger(__name__)

TestFunction = Callable[[np.ndarray, np.ndarray], np.ndarray]

# reverse atoms are matched to the forward angle within this distance
ATOM_MATCH_TOL = 1e-9


def balance_estimate(kernel: Kernel, f: TestFunction, n: int, rng: np.random.Generator) -> Tuple[float, float]:
    """Monte Carlo (mean, standard error) of f(θ, θ′) - f(θ′, θ)"""
    if n < 2:
        raise ValueError(f"n must be at least 2, got {n}")
    theta = np.arccos(1.0 - 2.0 * rng.uniform(size=n))
    theta = np.clip(theta, 1e-12, math.pi - 1e-12)
    theta_out = np.array([sample_kernel(kernel, float(t), rng) for t in theta])
    diff = np.asarray(f(theta, theta_out), dtype=float) - np.asarray(f(theta_out, theta), dtype=float)
    return float(diff.mean()), float(diff.std(ddof=1) / math.sqrt(n))


def detailed_balance_defect(kernel: Kernel, f: TestFunction, n: int, rng: np.random.Generator) -> float:
    return balance_estimate(kernel, f, n, rng)[0]


def atomic_balance_defect(kernel: Kernel, thetas: Sequence[float], tol: float = ATOM_MATCH_TOL) -> float:
    """
    Exact defect of an atomic kernel on a grid: the largest |p(θ→θ′)·sinθ - p(θ′→θ)·sinθ′| over all atoms.
    A missing reverse atom counts with probability zero.
    """
    if not kernel.is_atomic:
        raise ValueError(f"{kernel.name} kernel has a continuous part; use detailed_balance_defect")
    worst = 0.0
    for theta in thetas:
        check_theta(theta)
        for atom in kernel.atoms(theta):
            back = sum(a.prob for a in kernel.atoms(atom.angle) if abs(a.angle - theta) <= tol)
            worst = max(worst, abs(atom.prob * math.sin(theta) - back * math.sin(atom.angle)))
    return worst


def random_test_functions(count: int, rng: np.random.Generator, order: int = 3):
    """Smooth bounded test functions: random trigonometric polynomials in (θ, θ′)"""
    funcs = []
    for _ in range(count):
        coef = rng.normal(size=(order, order))
        phase = rng.uniform(0.0, 2 * math.pi, size=(order, order))

        def f(a, b, coef=coef, phase=phase):
            out = np.zeros(np.broadcast(a, b).shape)
            for i in range(order):
                for j in range(order):
                    out += coef[i, j] * np.cos((i + 1) * a + (j + 1) * b + phase[i, j])
            return out

        funcs.append(f)
    return funcs
