"""converge: ladder of roughness scales compared with the rough reflection limit; always writes JSON"""

import logging
import math
from dataclasses import dataclass, field
from typing import List, Optional

from transformers import HfArgumentParser

from ..stats.convergence import StudyTemplate, convergence_study
from ..utils import Limits
from .common import (
    OutputArguments,
    WallArguments,
    arguments_config,
    build_meta,
    parse_arguments,
    render_json,
    setup_logging,
    write_output,
)

logger = logging.getLogger(__name__)

RUNG_FIELDS = ('eps', 'ks_theta', 'median_psi_err', 'singular_frac', 'cluster_radius', 'cluster_max', 'freq_error')


@dataclass
class ConvergeArguments:
    eps_list: List[float] = field(
        default_factory=lambda: [1e-1, 1e-2, 1e-3], metadata={"help": "Strictly decreasing roughness scales"}
    )
    m: float = field(default=1.0, metadata={"help": "Disk mass"})
    J: float = field(default=1.0, metadata={"help": "Disk moment of inertia"})
    theta: float = field(default=math.pi / 3, metadata={"help": "Tilted polar angle of the incoming velocity"})
    psi: float = field(default=math.pi / 2, metadata={"help": "Angle between the velocity and the rolling axis"})
    samples: int = field(default=1000, metadata={"help": "Collisions per rung"})
    cyl: bool = field(default=False, metadata={"help": "Use the cylindrical approximation"})
    max_bounces: int = field(default=10**6, metadata={"help": "Bounce cap per collision"})


def main(argv: Optional[List[str]] = None) -> int:
    parser = HfArgumentParser((WallArguments, ConvergeArguments, OutputArguments))
    wall_args, converge_args, out_args = parse_arguments(parser, argv)
    setup_logging()

    seed = out_args.require_seed()
    template = StudyTemplate(
        converge_args.m, converge_args.J, converge_args.theta, converge_args.psi, converge_args.cyl
    )
    reports = convergence_study(
        wall_args.to_spec(),
        template,
        converge_args.eps_list,
        converge_args.samples,
        seed,
        Limits(max_bounces=converge_args.max_bounces),
    )
    rungs = [{k: r.details.get(k) for k in RUNG_FIELDS} for r in reports]
    meta = build_meta(seed, arguments_config(wall_args, converge_args, out_args))
    payload = {'rungs': rungs, 'tests': [r.to_dict() for r in reports]}
    write_output(render_json(payload, meta), out_args.output)
    return 0


if __name__ == "__main__":
    main()
