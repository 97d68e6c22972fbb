"""Acceptance suite behind the `verify` subcommand: every check returns one or more Reports"""

import logging
import math
from dataclasses import dataclass, field, replace
from typing import Callable, List, Sequence, Tuple

import numpy as np
from scipy import stats as sps

from ..billiard2d import ReflState, macro_reflection, sample_lambda1
from ..diskwall import (
    DiskParams,
    apply_collision_matrix,
    collide,
    collide_cyl,
    collision_matrix,
    cylinder_base,
    rolling_momentum,
    run_collide,
    sample_lambda2,
    to_tilted,
)
from ..errors import Capped, DegenerateAngle, RoughBilliardsError, Singular
from ..geometry import WallSpec, build_wall
from ..kernels import (
    AutoKernel,
    DeterministicKernel,
    atomic_balance_defect,
    averaged_kernel,
    balance_estimate,
    circ_arc_map,
    random_test_functions,
    rect_specular_prob,
)
from ..utils import batch_rng, sample_rng
from .convergence import StudyTemplate, run_rung
from .empirical import THREE_SIGMA_COVERAGE, EmpiricalDist, binomial_band, ks_band, ks_distance
from .report import MAX_EXCLUDED_FRACTION, Report, failed_report, invariance_report, macro_invariance_report

logger = logging.getLogger(__name__)

# atomic samples are compared after rounding to this many decimals
SNAP_DECIMALS = 9


@dataclass
class VerifyConfig:
    kernel_samples: int = field(default=100_000, metadata={"help": "Macro reflections per theta in kernel checks"})
    theta_grid: int = field(default=32, metadata={"help": "Number of incidence angles in kernel grids"})
    circ_samples: int = field(default=1000, metadata={"help": "Random (X, theta) pairs per xi"})
    balance_grid: int = field(default=64, metadata={"help": "Grid size of the exact atomic balance check"})
    balance_functions: int = field(default=20, metadata={"help": "Random test functions for the Lambertian check"})
    balance_samples: int = field(default=100_000, metadata={"help": "Monte Carlo samples per test function"})
    invariance_samples: int = field(default=100_000, metadata={"help": "Samples per invariance test"})
    involution_samples: int = field(default=1000, metadata={"help": "States per involution test"})
    collision_samples: int = field(default=10_000, metadata={"help": "Collisions in the conservation checks"})
    matrix_trials: int = field(default=100, metadata={"help": "Random (m, J) pairs for matrix identities"})
    cluster_samples: int = field(default=10_000, metadata={"help": "Collisions per eps in the correspondence check"})
    cluster_eps: Tuple[float, ...] = field(default=(1e-1, 1e-2, 1e-3), metadata={"help": "Decreasing eps ladder"})
    final_radius: float = field(default=0.05, metadata={"help": "Largest cluster radius at the smallest eps"})

    @classmethod
    def quick(cls) -> "VerifyConfig":
        """Small sample sizes for smoke runs; thresholds are unchanged"""
        return cls(
            kernel_samples=4000,
            theta_grid=6,
            circ_samples=100,
            balance_grid=16,
            balance_functions=5,
            balance_samples=4000,
            invariance_samples=4000,
            involution_samples=50,
            collision_samples=100,
            matrix_trials=20,
            cluster_samples=100,
            cluster_eps=(1e-1, 1e-2),
            final_radius=math.inf,
        )


def familywise_sigmas(count: int) -> float:
    """Normal quantile keeping the 3σ two-sided error rate across count simultaneous checks"""
    return float(sps.norm.isf((1.0 - THREE_SIGMA_COVERAGE) / (2.0 * max(count, 1))))


def snap(dist: EmpiricalDist) -> EmpiricalDist:
    return EmpiricalDist(np.round(dist.samples, SNAP_DECIMALS), dist.excluded_count, dist.seed)


def theta_grid(count: int, boundary: Callable[[float], bool], margin: float = 0.15) -> List[float]:
    """count angles spread over (margin, π - margin), nudged off boundary cases"""
    grid = []
    for theta in np.linspace(margin, math.pi - margin, count):
        theta = float(theta)
        while boundary(theta):
            theta += 1e-3
        grid.append(theta)
    return grid


def _rect_boundary(r: float) -> Callable[[float], bool]:
    def near(theta: float) -> bool:
        travel = 2 * r * abs(math.cos(theta) / math.sin(theta))
        return abs(travel - round(travel)) < 1e-3 or abs(theta - math.pi / 2) < 1e-3

    return near


def check_rect_kernel(cfg: VerifyConfig, seed: int, r: float = 0.3) -> Report:
    """Specular mass of the simulated rect wall against rect_specular_prob on a θ grid"""
    spec = WallSpec(family='rect_teeth', params={'r': r})
    grid = theta_grid(cfg.theta_grid, _rect_boundary(r))
    sigmas = familywise_sigmas(len(grid))
    worst = 0.0
    rows = []
    for i, theta in enumerate(grid):
        dist = averaged_kernel(spec, theta, cfg.kernel_samples, seed + i)
        p = rect_specular_prob(theta, r)
        freq = dist.mass_near(math.pi - theta, 1e-6)
        stray = 1.0 - freq - dist.mass_near(theta, 1e-6)
        band = max(binomial_band(p, len(dist), sigmas), 1.0 / len(dist))
        score = abs(freq - p) / band if stray <= 0.0 else math.inf
        worst = max(worst, score)
        rows.append({'theta': theta, 'p': p, 'freq': freq})
    return Report('rect_kernel_vs_simulation', worst, 1.0, [cfg.kernel_samples], seed, {'grid': rows})


def check_scale_invariance(cfg: VerifyConfig, seed: int) -> List[Report]:
    reports = []
    theta = 1.0
    for spec in (WallSpec(family='rect_teeth', params={'r': 0.3}), WallSpec(family='tri_teeth', params={'psi': 1.0})):
        a = snap(averaged_kernel(spec, theta, cfg.kernel_samples, seed))
        b = snap(averaged_kernel(spec.with_changes(scale=0.37), theta, cfg.kernel_samples, seed + 1))
        reports.append(
            Report(
                f'scale_invariance[{spec.family}]',
                ks_distance(a, b),
                ks_band(len(a), len(b)),
                [len(a), len(b)],
                seed,
            )
        )
    return reports


def check_circ_map(cfg: VerifyConfig, seed: int) -> Report:
    """circ_arc_map against macro reflection in the arc wall"""
    worst, skipped = 0.0, 0
    for j, xi in enumerate((math.pi / 6, math.pi / 3, math.pi / 2)):
        wall = build_wall(WallSpec(family='circ_arcs', params={'xi': xi}))
        rng = batch_rng(seed, 100 + j)
        for X, theta in zip(rng.uniform(size=cfg.circ_samples), rng.uniform(0.05, math.pi - 0.05, cfg.circ_samples)):
            try:
                analytic = circ_arc_map(float(X), float(theta), xi)
                simulated = macro_reflection(wall, ReflState(float(X) * wall.period, float(theta))).theta
            except (Singular, Capped):
                skipped += 1
                continue
            worst = max(worst, abs(analytic - simulated))
    total = 3 * cfg.circ_samples
    if skipped / total > MAX_EXCLUDED_FRACTION:
        return failed_report('circ_map_vs_trace', f'{skipped} of {total} samples singular', seed)
    return Report('circ_map_vs_trace', worst, 1e-8, [total], seed, {'skipped': skipped})


def _tri_boundary(psi: float) -> Callable[[float], bool]:
    def near(theta: float) -> bool:
        ratio = 2 * theta / psi
        return abs(ratio - round(ratio)) < 1e-3

    return near


def check_balance(cfg: VerifyConfig, seed: int) -> List[Report]:
    reports = []
    psi = math.pi / 3
    grid = theta_grid(cfg.balance_grid, lambda t: _rect_boundary(0.3)(t) or _tri_boundary(psi)(t))
    for kernel in (AutoKernel('specular'), AutoKernel('retro'), AutoKernel('rect', r=0.3), AutoKernel('tri', psi=psi)):
        defect = atomic_balance_defect(kernel, grid)
        reports.append(Report(f'balance_exact[{kernel.name}]', defect, 1e-12, [len(grid)], seed))

    lambertian = AutoKernel('lambertian')
    funcs = random_test_functions(cfg.balance_functions, batch_rng(seed, 200))
    worst = 0.0
    for i, f in enumerate(funcs):
        mean, stderr = balance_estimate(lambertian, f, cfg.balance_samples, batch_rng(seed, 201 + i))
        worst = max(worst, abs(mean) / stderr if stderr > 0 else 0.0)
    reports.append(
        Report(
            'balance_monte_carlo[lambertian]',
            worst,
            familywise_sigmas(len(funcs)),
            [cfg.balance_samples] * len(funcs),
            seed,
        )
    )
    return reports


def check_invariance(cfg: VerifyConfig, seed: int) -> List[Report]:
    kernels = [
        AutoKernel('specular'),
        AutoKernel('retro'),
        AutoKernel('lambertian'),
        AutoKernel('rect', r=0.3),
        AutoKernel('tri', psi=math.pi / 3),
        AutoKernel('circ', xi=math.pi / 3),
    ]
    reports = [invariance_report(kernel, cfg.invariance_samples, seed + i) for i, kernel in enumerate(kernels)]
    walls = [
        WallSpec(family='flat'),
        WallSpec(family='rect_teeth', params={'r': 0.3}),
        WallSpec(family='tri_teeth', params={'psi': math.pi / 3}),
        WallSpec(family='circ_arcs', params={'xi': math.pi / 3}),
        WallSpec(family='ell_arcs', params={'xi': math.pi / 3, 'axis_ratio': 0.7}),
    ]
    for i, spec in enumerate(walls):
        reports.append(macro_invariance_report(build_wall(spec), cfg.invariance_samples, seed + 10 + i))
    return reports


def check_macro_involution(cfg: VerifyConfig, seed: int) -> Report:
    wall = build_wall(WallSpec(family='rect_teeth', params={'r': 0.3}))
    worst, skipped = 0.0, 0
    for i in range(cfg.involution_samples):
        x, theta = sample_lambda1(sample_rng(seed, i), wall.period)
        try:
            s = ReflState(float(x), float(theta))
            once = macro_reflection(wall, s)
            twice = macro_reflection(wall, once)
        except (Singular, Capped):
            skipped += 1
            continue
        worst = max(worst, abs(twice.x - s.x), abs(twice.theta - s.theta))
    if skipped / cfg.involution_samples > MAX_EXCLUDED_FRACTION:
        return failed_report(
            'involution[macro_reflection]', f'{skipped} of {cfg.involution_samples} samples excluded', seed
        )
    return Report('involution[macro_reflection]', worst, 1e-8, [cfg.involution_samples], seed, {'skipped': skipped})


def _collision_samples(n: int, params: DiskParams, seed: int):
    for i in range(n):
        yield sample_lambda2(sample_rng(seed, i), params)


def check_collide_involution(cfg: VerifyConfig, seed: int) -> Report:
    params = DiskParams(1.0, 1.0, 0.1)
    wall = build_wall(WallSpec(family='rect_teeth', params={'r': 1.0}, scale=0.1, datum='disk_wall'))
    worst, skipped = 0.0, 0
    for s in _collision_samples(cfg.involution_samples, params, seed):
        try:
            once = collide(wall, params, s)
            twice = collide(wall, params, once)
        except (Singular, Capped):
            skipped += 1
            continue
        err = max(np.max(np.abs(np.subtract(twice.y, s.y))), params.norm(np.subtract(twice.w, s.w)))
        worst = max(worst, float(err))
    if skipped / cfg.involution_samples > MAX_EXCLUDED_FRACTION:
        return failed_report('involution[collide]', f'{skipped} of {cfg.involution_samples} samples excluded', seed)
    return Report('involution[collide]', worst, 1e-6, [cfg.involution_samples], seed, {'skipped': skipped})


def check_conservation(cfg: VerifyConfig, seed: int) -> List[Report]:
    params = DiskParams(1.0, 2.0, 0.1)
    wall = build_wall(WallSpec(family='rect_teeth', params={'r': 1.0}, scale=0.1, datum='disk_wall'))
    base = cylinder_base(wall, params)
    energy, rolling, psi_flip = 0.0, 0.0, 0.0
    skipped = {'full': 0, 'cyl': 0}
    for s in _collision_samples(cfg.collision_samples, params, seed):
        outcome = run_collide(wall, params, s)
        if outcome.status == 'returned':
            drift = abs(params.norm(outcome.result.w) - 1.0)
            energy = max(energy, drift / max(outcome.bounces, 1))
        else:
            skipped['full'] += 1
        try:
            cyl = collide_cyl(wall, params, s, base=base)
            psi_out = to_tilted(cyl, params).psi
        except (Singular, Capped, DegenerateAngle):
            skipped['cyl'] += 1
            continue
        rolling = max(rolling, abs(rolling_momentum(cyl.w, params) - rolling_momentum(np.negative(s.w), params)))
        psi_flip = max(psi_flip, abs(psi_out - (math.pi - to_tilted(s, params).psi)))

    no_slip = 0.0
    rng = batch_rng(seed, 300)
    for u in rng.normal(size=(cfg.collision_samples, 3)):
        u = params.normalize(u)
        after = apply_collision_matrix('no_slip', u, params)
        no_slip = max(no_slip, abs(rolling_momentum(after, params) - rolling_momentum(u, params)))
    n = [cfg.collision_samples]
    worst_skipped = max(skipped.values())
    if worst_skipped / cfg.collision_samples > MAX_EXCLUDED_FRACTION:
        reason = f'{worst_skipped} of {cfg.collision_samples} collisions excluded'
        return [failed_report('conservation', reason, seed, skipped=skipped)]
    details = {'skipped': skipped}
    return [
        Report('conservation[energy]', energy, 1e-12, n, seed, details),
        Report('conservation[rolling_momentum_cyl]', rolling, 1e-10, n, seed, details),
        Report('conservation[psi_flip_cyl]', psi_flip, 1e-10, n, seed, details),
        Report('conservation[rolling_momentum_no_slip]', no_slip, 1e-12, n, seed),
    ]


def check_matrices(cfg: VerifyConfig, seed: int) -> List[Report]:
    rng = batch_rng(seed, 400)
    worst = 0.0
    for m, J in rng.uniform(0.1, 10.0, size=(cfg.matrix_trials, 2)):
        params = DiskParams(float(m), float(J))
        G = np.diag(params.metric)
        for kind in ('smooth', 'no_slip'):
            A = collision_matrix(kind, params)
            worst = max(worst, float(np.max(np.abs(A @ A - np.eye(3)))), float(np.max(np.abs(A.T @ G @ A - G))))

    params = DiskParams(1.0, 1.5, 0.1)
    wall = build_wall(WallSpec(family='flat', datum='disk_wall'))
    smooth = 0.0
    for s in _collision_samples(cfg.matrix_trials, params, seed):
        # α = 0 puts satellite 0 on the wall, so the contact normal is ê₂
        s = replace(s, y=(s.y[0], 0.0, 0.0))
        out = collide(wall, params, s)
        expected = apply_collision_matrix('smooth', np.negative(s.w), params)
        smooth = max(smooth, params.norm(np.subtract(out.w, expected)))
    return [
        Report('matrix_identities', worst, 1e-12, [cfg.matrix_trials], seed),
        Report('flat_wall_smooth', smooth, 1e-10, [cfg.matrix_trials], seed),
    ]


def check_correspondence(cfg: VerifyConfig, seed: int) -> List[Report]:
    """Collisions on rect walls cluster at A_smooth·u and A_no-slip·u with the rect kernel's frequencies"""
    spec = WallSpec(family='rect_teeth', params={'r': 1.0})
    template = StudyTemplate(m=1.0, J=1.0, theta=math.pi / 3, psi=math.pi / 2)
    rungs = [run_rung(spec, template, eps, cfg.cluster_samples, seed) for eps in cfg.cluster_eps]
    growth = -math.inf
    for a, b in zip(rungs[:-1], rungs[1:]):
        noise = binomial_band(0.5, max(min(a.n_returned, b.n_returned), 1), 2.0)
        growth = max(growth, b.cluster_radius - a.cluster_radius, b.freq_error - a.freq_error - noise)
    last = rungs[-1]
    band = max(binomial_band(0.5, max(last.n_returned, 1)), 1.0 / max(last.n_returned, 1))
    details = {'rungs': [r.to_dict() for r in rungs]}
    return [
        Report('correspondence_monotone', max(growth, 0.0), 0.0, [cfg.cluster_samples], seed, details),
        Report(
            'correspondence_final',
            max(last.cluster_radius / cfg.final_radius, last.freq_error / band),
            1.0,
            [cfg.cluster_samples],
            seed,
        ),
    ]


CHECKS: Sequence[Callable] = (
    check_rect_kernel,
    check_scale_invariance,
    check_circ_map,
    check_balance,
    check_invariance,
    check_macro_involution,
    check_collide_involution,
    check_conservation,
    check_matrices,
    check_correspondence,
)


def run_verify(cfg: VerifyConfig, seed: int, checks: Sequence[Callable] = CHECKS) -> List[Report]:
    reports: List[Report] = []
    for check in checks:
        logger.info(f"Running {check.__name__}")
        try:
            out = check(cfg, seed)
        except RoughBilliardsError as e:
            out = failed_report(check.__name__, f'{e.__class__.__name__}: {e}', seed)
        for report in out if isinstance(out, list) else [out]:
            report.log()
            reports.append(report)
    return reports


def broken_kernel() -> DeterministicKernel:
    """θ -> θ/2: not stationary for ½·sinθ"""
    return DeterministicKernel(lambda theta: theta / 2, name='halving')
