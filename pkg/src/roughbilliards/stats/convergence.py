"""Ladder of decreasing roughness scales comparing simulated disk collisions with their rough limit"""

import logging
import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence

import numpy as np

from ..diskwall import DiskParams, cluster_velocities, collide_at_angles, outcome_angles
from ..geometry import WallSpec, build_wall, foreshorten
from ..kernels import averaged_kernel, kernel_for_wall
from ..utils import DEFAULT_LIMITS, Limits
from .empirical import EmpiricalDist, binomial_band, ks_band, ks_distance
from .report import MAX_EXCLUDED_FRACTION, Report

logger = logging.getLogger(__name__)


@dataclass
class StudyTemplate:
    """Disk and incidence used on every rung of the ladder"""

    m: float = 1.0
    J: float = 1.0
    theta: float = math.pi / 3
    psi: float = math.pi / 2
    cyl: bool = False


@dataclass
class Rung:
    eps: float
    ks_theta: float
    median_psi_err: float
    psi_err_noise: float
    singular_frac: float
    n_returned: int
    cluster_radius: float = math.nan
    cluster_max: float = math.nan
    freq_error: float = math.nan

    def to_dict(self) -> Dict:
        return {k: getattr(self, k) for k in self.__dataclass_fields__}


def run_rung(
    spec: WallSpec, template: StudyTemplate, eps: float, n: int, seed: int, limits: Limits = DEFAULT_LIMITS
) -> Rung:
    params = DiskParams(template.m, template.J, eps)
    wall = build_wall(spec.with_changes(scale=eps, datum='disk_wall'))
    outcomes = collide_at_angles(wall, params, template.theta, template.psi, n, seed, template.cyl, limits)
    returned = [o for o in outcomes if o.status == 'returned']
    singular_frac = 1.0 - len(returned) / n
    if not returned:
        return Rung(eps, math.nan, math.nan, math.nan, singular_frac, 0)

    angles = np.array([outcome_angles(o, params) for o in returned])
    psi_err = np.abs(angles[:, 3] - (math.pi - angles[:, 1]))
    # standard error of a sample median
    psi_noise = 1.2533 * float(np.std(psi_err)) / math.sqrt(len(psi_err))

    reference = averaged_kernel(
        foreshorten(spec.with_changes(scale=1.0, datum='half_plane'), template.m, template.J), template.theta, n, seed
    )
    ks = ks_distance(EmpiricalDist(angles[:, 2], n - len(returned), seed), reference)
    rung = Rung(eps, ks, float(np.median(psi_err)), psi_noise, singular_frac, len(returned))

    summary = cluster_velocities([o.state for o in returned], [o.result for o in returned], params)
    rung.cluster_radius = summary.radius
    rung.cluster_max = summary.max_distance
    try:
        kernel = kernel_for_wall(foreshorten(spec, template.m, template.J))
    except ValueError:
        kernel = None
    if kernel is not None and kernel.is_atomic:
        smooth = sum(a.prob for a in kernel.atoms(template.theta) if abs(a.angle - (math.pi - template.theta)) < 1e-9)
        rung.freq_error = abs(summary.specular_frequency - smooth)
    logger.info(f"eps={eps}: {rung.to_dict()}")
    return rung


def _growth(values: Sequence[float], noise: Sequence[float]) -> float:
    """Largest step-to-step increase beyond 2σ noise; negative when the sequence is non-increasing"""
    finite = [(v, s) for v, s in zip(values, noise) if math.isfinite(v)]
    steps = [b - a - 2.0 * max(sa, sb) for (a, sa), (b, sb) in zip(finite[:-1], finite[1:])]
    return max(steps, default=-math.inf)


def convergence_study(
    spec: WallSpec,
    template: Optional[StudyTemplate] = None,
    eps_list: Sequence[float] = (1e-1, 1e-2, 1e-3),
    n: int = 1000,
    seed: int = 0,
    limits: Limits = DEFAULT_LIMITS,
) -> List[Report]:
    """
    One Report per rung with the KS distance of θ′ from the averaged kernel of the foreshortened wall;
    a rung fails when the KS distance or the median ψ error grows beyond 2σ noise relative to the previous rung.
    """
    template = template or StudyTemplate()
    eps_list = [float(e) for e in eps_list]
    if any(b >= a for a, b in zip(eps_list[:-1], eps_list[1:])):
        raise ValueError(f"eps_list must be strictly decreasing, got {eps_list}")

    rungs = [run_rung(spec, template, eps, n, seed, limits) for eps in eps_list]
    reports = []
    for i, rung in enumerate(rungs):
        band = ks_band(max(rung.n_returned, 1), n) / 3.0
        prefix = rungs[: i + 1]
        growth = max(
            _growth([r.ks_theta for r in prefix], [band] * len(prefix)),
            _growth([r.median_psi_err for r in prefix], [r.psi_err_noise for r in prefix]),
        )
        details = rung.to_dict()
        details['growth'] = growth if math.isfinite(growth) else None
        statistic = max(growth, 0.0) if rung.singular_frac <= MAX_EXCLUDED_FRACTION else math.inf
        if math.isfinite(rung.freq_error):
            details['freq_band'] = binomial_band(0.5, max(rung.n_returned, 1))
        reports.append(
            Report(
                name=f'convergence[{spec.family}, eps={rung.eps:g}]',
                statistic=statistic,
                threshold=0.0,
                sample_sizes=[n, rung.n_returned],
                seed=seed,
                details=details,
            )
        )
    return reports
