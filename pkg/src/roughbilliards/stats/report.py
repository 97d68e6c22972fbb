import logging
import math
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Optional

import numpy as np

from ..billiard2d import count_status, reflect_lambda1
from ..errors import InvalidParam
from ..geometry import Wall
from ..kernels.base import Kernel
from ..utils import batch_rng
from .empirical import EmpiricalDist, ks_band, ks_distance, sine_cdf

logger = logging.getLogger(__name__)

MIN_INVARIANCE_SAMPLES = 1000
MAX_EXCLUDED_FRACTION = 0.01


@dataclass
class Report:
    """One statistical check; it passes when statistic <= threshold"""

    name: str
    statistic: float
    threshold: float
    sample_sizes: List[int] = field(default_factory=list)
    seed: Optional[int] = None
    details: Dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return bool(self.statistic <= self.threshold)

    @property
    def verdict(self) -> str:
        return 'pass' if self.passed else 'fail'

    def to_dict(self) -> Dict[str, Any]:
        out = asdict(self)
        out['verdict'] = self.verdict
        return out

    def log(self) -> None:
        level = logging.INFO if self.passed else logging.WARNING
        logger.log(level, f"{self.name}: statistic={self.statistic:.6g} threshold={self.threshold:.6g} {self.verdict}")


def failed_report(name: str, reason: str, seed: Optional[int] = None, **details) -> Report:
    return Report(name, math.inf, 0.0, seed=seed, details={'error': reason, **details})


def invariance_report(kernel: Kernel, n: int, seed: int) -> Report:
    """Push θ ~ ½·sinθ through the kernel and KS-test θ′ against ½·sinθ"""
    if n < MIN_INVARIANCE_SAMPLES:
        raise InvalidParam(f"invariance_report needs n >= {MIN_INVARIANCE_SAMPLES}, got {n}")
    rng = batch_rng(seed, 0)
    theta = np.clip(np.arccos(1.0 - 2.0 * rng.uniform(size=n)), 1e-12, math.pi - 1e-12)
    theta_out = kernel.sample_many(theta, batch_rng(seed, 1))
    dist = EmpiricalDist(theta_out, 0, seed)
    report = Report(
        name=f'invariance[{kernel.name}]',
        statistic=ks_distance(dist, sine_cdf),
        threshold=ks_band(n),
        sample_sizes=[n],
        seed=seed,
    )
    report.log()
    return report


def macro_invariance_report(wall: Wall, n: int, seed: int) -> Report:
    """Λ¹ invariance of macro reflection on a wall: (x, θ) ~ Λ¹ over one period, θ′ tested against ½·sinθ"""
    if n < MIN_INVARIANCE_SAMPLES:
        raise InvalidParam(f"macro_invariance_report needs n >= {MIN_INVARIANCE_SAMPLES}, got {n}")
    outcomes = reflect_lambda1(wall, n, seed)
    counts = count_status(outcomes)
    returned = [o.theta_out for o in outcomes if o.status == 'returned']
    excluded = n - len(returned)
    name = f'macro_invariance[{wall.family}]'
    if excluded / n > MAX_EXCLUDED_FRACTION:
        return failed_report(name, f'{excluded} of {n} samples excluded', seed, counts=counts)
    dist = EmpiricalDist(np.asarray(returned), excluded, seed)
    report = Report(
        name=name,
        statistic=ks_distance(dist, sine_cdf),
        threshold=ks_band(len(dist)),
        sample_sizes=[len(dist)],
        seed=seed,
        details={'excluded': excluded},
    )
    report.log()
    return report
