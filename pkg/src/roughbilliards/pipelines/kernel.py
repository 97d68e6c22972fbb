"""kernel: tabulate a closed-form reflection kernel on a grid of incidence angles"""

import logging
import math
from dataclasses import dataclass, field
from typing import List, Optional

from transformers import HfArgumentParser

from ..errors import BoundaryCase
from ..kernels import Atom, Kernel, sample_kernel
from ..kernels.base import BOUNDARY_JITTER
from ..utils import sample_rng
from .common import (
    KernelParamArguments,
    OutputArguments,
    arguments_config,
    build_meta,
    emit,
    parse_arguments,
    setup_logging,
)

logger = logging.getLogger(__name__)


@dataclass
class KernelArguments:
    family: str = field(default='rect', metadata={"help": "specular, retro, lambertian, rect, tri or circ"})
    theta_grid: int = field(default=8, metadata={"help": "K incidence angles pi*(i+1)/(K+1), i < K"})
    samples: int = field(default=1000, metadata={"help": "Draws per angle for kernels without atoms"})

    def __post_init__(self):
        if self.theta_grid < 1:
            raise ValueError(f"theta_grid must be positive, got {self.theta_grid}")


def grid(count: int) -> List[float]:
    return [math.pi * (i + 1) / (count + 1) for i in range(count)]


def atoms_at(kernel: Kernel, theta: float) -> List[Atom]:
    try:
        return kernel.atoms(theta)
    except BoundaryCase:
        jittered = theta + BOUNDARY_JITTER if theta < math.pi / 2 else theta - BOUNDARY_JITTER
        logger.warning(f"{kernel.name}: boundary case at theta={theta!r}, tabulating at {jittered!r}")
        return kernel.atoms(jittered)


def main(argv: Optional[List[str]] = None) -> int:
    parser = HfArgumentParser((KernelArguments, KernelParamArguments, OutputArguments))
    kernel_args, param_args, out_args = parse_arguments(parser, argv)
    setup_logging()

    kernel = param_args.build(kernel_args.family)
    thetas = grid(kernel_args.theta_grid)
    config = arguments_config(kernel_args, param_args, out_args)

    if kernel.is_atomic:
        rows = [(theta, atom.angle, atom.prob) for theta in thetas for atom in atoms_at(kernel, theta)]
        emit(out_args, ['theta', 'atom_angle', 'atom_prob'], rows, build_meta(out_args.seed, config))
        return 0

    seed = out_args.require_seed()
    rows = []
    for i, theta in enumerate(thetas):
        rng = sample_rng(seed, i)
        rows.extend((theta, sample_kernel(kernel, theta, rng)) for _ in range(kernel_args.samples))
    logger.info(f"{kernel}: {kernel_args.samples} draws at each of {len(thetas)} angles")
    emit(out_args, ['theta', 'theta_out'], rows, build_meta(seed, config))
    return 0


if __name__ == "__main__":
    main()
