"""Empirical distributions of reflection angles and Kolmogorov-Smirnov comparisons"""

import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, List, Optional, Tuple, Union

import numpy as np
from scipy import stats

from ..errors import Empty

logger = logging.getLogger(__name__)

# two-sided coverage of a ±3σ normal interval
THREE_SIGMA_COVERAGE = 1.0 - 2.0 * float(stats.norm.sf(3.0))


@dataclass
class EmpiricalDist:
    """Sorted samples plus the number of draws that were excluded (singular or capped)"""

    samples: np.ndarray = field(default_factory=lambda: np.empty(0))
    excluded_count: int = 0
    seed: Optional[int] = None

    def __post_init__(self):
        self.samples = np.sort(np.asarray(self.samples, dtype=float).ravel())
        if self.excluded_count < 0:
            raise ValueError(f"excluded_count must be non-negative, got {self.excluded_count}")

    def __len__(self):
        return len(self.samples)

    @property
    def total(self) -> int:
        return len(self.samples) + self.excluded_count

    @property
    def excluded_fraction(self) -> float:
        return self.excluded_count / self.total if self.total else 0.0

    def cdf(self, x):
        return np.searchsorted(self.samples, x, side='right') / max(len(self.samples), 1)

    def mass_near(self, angle: float, tol: float = 1e-6) -> float:
        """Fraction of samples within tol of angle"""
        if not len(self.samples):
            raise Empty("no samples")
        lo = np.searchsorted(self.samples, angle - tol, side='left')
        hi = np.searchsorted(self.samples, angle + tol, side='right')
        return (hi - lo) / len(self.samples)

    def clusters(self, gap: float = 1e-6) -> List[Tuple[float, float, float]]:
        """(center, spread, frequency) of the groups of samples separated by more than gap"""
        if not len(self.samples):
            return []
        breaks = np.flatnonzero(np.diff(self.samples) > gap) + 1
        out = []
        for group in np.split(self.samples, breaks):
            out.append((float(np.mean(group)), float(group[-1] - group[0]), len(group) / len(self.samples)))
        return out

    def merge(self, other: "EmpiricalDist") -> "EmpiricalDist":
        """Pool two batches; the result does not depend on the merge order"""
        seed = self.seed if self.seed == other.seed else None
        return EmpiricalDist(
            np.concatenate([self.samples, other.samples]), self.excluded_count + other.excluded_count, seed
        )

    def to_dict(self):
        return {
            'n': len(self.samples),
            'excluded_count': self.excluded_count,
            'seed': self.seed,
            'samples': self.samples.tolist(),
        }


def from_samples(values: Iterable[float], excluded_count: int = 0, seed: Optional[int] = None) -> EmpiricalDist:
    return EmpiricalDist(np.fromiter((float(v) for v in values), dtype=float), excluded_count, seed)


def ks_distance(a: EmpiricalDist, b: Union[EmpiricalDist, Callable]) -> float:
    """Sup-norm distance between the empirical CDF of a and b (another sample set or a vectorized CDF)"""
    if not len(a):
        raise Empty("first distribution has no samples")
    if isinstance(b, EmpiricalDist):
        if not len(b):
            raise Empty("second distribution has no samples")
        return float(stats.ks_2samp(a.samples, b.samples).statistic)
    return float(stats.kstest(a.samples, b).statistic)


def kolmogorov_quantile(coverage: float = THREE_SIGMA_COVERAGE) -> float:
    """Quantile of the limiting Kolmogorov distribution; about 1.80 at the 3σ coverage"""
    return float(stats.kstwobign.ppf(coverage))


def ks_band(n: int, m: Optional[int] = None, coverage: float = THREE_SIGMA_COVERAGE) -> float:
    """
    Threshold for the KS statistic at the given coverage: c/√n for one sample of size n against a CDF,
    c·√((n + m)/(n·m)) for two samples.
    """
    if n < 1 or (m is not None and m < 1):
        raise Empty("KS band needs at least one sample per side")
    c = kolmogorov_quantile(coverage)
    if m is None:
        return c / math.sqrt(n)
    return c * math.sqrt((n + m) / (n * m))


def binomial_band(p: float, n: int, sigmas: float = 3.0) -> float:
    """sigmas standard deviations of a frequency estimated from n Bernoulli(p) trials"""
    if n < 1:
        raise Empty("binomial band needs at least one trial")
    return sigmas * math.sqrt(max(p * (1.0 - p), 0.0) / n)


def sine_cdf(theta):
    """CDF of the density ½·sinθ on (0, π)"""
    return 0.5 * (1.0 - np.cos(np.clip(theta, 0.0, math.pi)))
