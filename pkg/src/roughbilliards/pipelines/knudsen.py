"""knudsen: exit times from a channel whose walls reflect with a given kernel"""

import logging
import math
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np
from transformers import HfArgumentParser

from ..kernels import knudsen_runs
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
class KnudsenArguments:
    kernel: str = field(default='lambertian', metadata={"help": "Wall kernel name, as for the kernel subcommand"})
    L: float = field(default=10.0, metadata={"help": "Channel length in channel widths"})
    runs: int = field(default=1000, metadata={"help": "Independent particles"})
    theta0: Optional[float] = field(default=None, metadata={"help": "Entry angle; Lambertian on (0, pi/2) if omitted"})
    max_bounces: int = field(default=10**6, metadata={"help": "Bounce cap per particle"})


def main(argv: Optional[List[str]] = None) -> int:
    parser = HfArgumentParser((KnudsenArguments, KernelParamArguments, OutputArguments))
    knudsen_args, param_args, out_args = parse_arguments(parser, argv)
    setup_logging()

    seed = out_args.require_seed()
    kernel = param_args.build(knudsen_args.kernel)
    results = knudsen_runs(
        kernel,
        knudsen_args.L,
        knudsen_args.runs,
        seed,
        knudsen_args.theta0,
        knudsen_args.max_bounces,
        out_args.progress,
    )
    rows = []
    for run, result in enumerate(results):
        if result is None:
            rows.append((run, math.nan, knudsen_args.max_bounces, 'capped'))
        else:
            rows.append((run, result.time, result.bounces, result.side))
    times = np.array([r.time for r in results if r is not None])
    if len(times):
        logger.info(f"Mean exit time {times.mean():.6g} over {len(times)} runs ({len(results) - len(times)} capped)")

    meta = build_meta(seed, arguments_config(knudsen_args, param_args, out_args))
    emit(out_args, ['run', 'time', 'bounces', 'side'], rows, meta)
    return 0


if __name__ == "__main__":
    main()
