"""reflect: macro reflections off a wall, one CSV row per entry state"""

import logging
from dataclasses import dataclass, field
from typing import List, Optional

from transformers import HfArgumentParser

from ..billiard2d import count_status, reflect_lambda1, reflect_uniform
from ..geometry import build_wall
from ..utils import Limits
from .common import OutputArguments, WallArguments, arguments_config, build_meta, emit, parse_arguments, setup_logging

logger = logging.getLogger(__name__)

HEADER = ['x', 'theta', 'x_out', 'theta_out', 'bounces', 'status']


@dataclass
class ReflectArguments:
    theta: Optional[float] = field(
        default=None, metadata={"help": "Incidence angle in (0, pi); when omitted (x, theta) follow sin(theta)"}
    )
    samples: int = field(default=1000, metadata={"help": "Number of trajectories"})
    max_bounces: int = field(default=10**6, metadata={"help": "Bounce cap per trajectory"})


def main(argv: Optional[List[str]] = None) -> int:
    parser = HfArgumentParser((WallArguments, ReflectArguments, OutputArguments))
    wall_args, reflect_args, out_args = parse_arguments(parser, argv)
    setup_logging()

    seed = out_args.require_seed()
    wall = build_wall(wall_args.to_spec())
    limits = Limits(max_bounces=reflect_args.max_bounces)
    if reflect_args.theta is None:
        outcomes = reflect_lambda1(wall, reflect_args.samples, seed, limits, out_args.progress)
    else:
        outcomes = reflect_uniform(wall, reflect_args.theta, reflect_args.samples, seed, limits, out_args.progress)
    logger.info(f"Reflection status counts: {count_status(outcomes)}")

    rows = [(o.x, o.theta, o.x_out, o.theta_out, o.bounces, o.status) for o in outcomes]
    meta = build_meta(seed, arguments_config(wall_args, reflect_args, out_args))
    emit(out_args, HEADER, rows, meta)
    return 0


if __name__ == "__main__":
    main()
