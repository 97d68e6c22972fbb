"""collide: disk-wall collisions at fixed tilted velocity angles"""

import logging
import math
from dataclasses import dataclass, field
from typing import List, Optional

from transformers import HfArgumentParser

from ..diskwall import DiskParams, collide_at_angles, to_tilted
from ..geometry import build_wall
from ..utils import Limits
from .common import OutputArguments, WallArguments, arguments_config, build_meta, emit, parse_arguments, setup_logging

logger = logging.getLogger(__name__)

HEADER = ['y1', 'y3', 'theta', 'psi', "y1'", "y3'", "theta'", "psi'", 'bounces', 'status']


@dataclass
class DiskArguments:
    m: float = field(default=1.0, metadata={"help": "Disk mass"})
    J: float = field(default=1.0, metadata={"help": "Disk moment of inertia"})
    eps: float = field(default=1e-2, metadata={"help": "Roughness scale; also the wall scale"})
    N: Optional[int] = field(default=None, metadata={"help": "Satellite count; derived from eps when omitted"})

    def to_params(self) -> DiskParams:
        return DiskParams(self.m, self.J, self.eps, self.N)


@dataclass
class CollideArguments:
    theta: float = field(default=math.pi / 3, metadata={"help": "Tilted polar angle of the velocity in (0, pi)"})
    psi: float = field(default=math.pi / 2, metadata={"help": "Angle between the velocity and the rolling axis"})
    samples: int = field(default=1000, metadata={"help": "Collisions, with (x1, alpha) uniform over one cell"})
    cyl: bool = field(default=False, metadata={"help": "Use the cylindrical approximation of configuration space"})
    max_bounces: int = field(default=10**6, metadata={"help": "Bounce cap per collision"})


def outcome_row(outcome, params: DiskParams):
    before = to_tilted(outcome.state, params)
    if outcome.status != 'returned':
        after = (math.nan,) * 4
    else:
        t = to_tilted(outcome.result, params)
        after = (t.y1, t.y3, t.theta, t.psi)
    return (before.y1, before.y3, before.theta, before.psi, *after, outcome.bounces, outcome.status)


def main(argv: Optional[List[str]] = None) -> int:
    parser = HfArgumentParser((WallArguments, DiskArguments, CollideArguments, OutputArguments))
    wall_args, disk_args, collide_args, out_args = parse_arguments(parser, argv)
    setup_logging()

    seed = out_args.require_seed()
    params = disk_args.to_params()
    wall = build_wall(wall_args.to_spec().with_changes(scale=params.eps, datum='disk_wall'))
    logger.info(f"{wall} with {params.N} satellites, m={params.m}, J={params.J}")
    outcomes = collide_at_angles(
        wall,
        params,
        collide_args.theta,
        collide_args.psi,
        collide_args.samples,
        seed,
        collide_args.cyl,
        Limits(max_bounces=collide_args.max_bounces),
        out_args.progress,
    )
    failed = sum(o.status != 'returned' for o in outcomes)
    if failed:
        logger.warning(f"{failed} of {len(outcomes)} collisions did not return")

    rows = [outcome_row(o, params) for o in outcomes]
    meta = build_meta(seed, arguments_config(wall_args, disk_args, collide_args, out_args))
    emit(out_args, HEADER, rows, meta)
    return 0


if __name__ == "__main__":
    main()
