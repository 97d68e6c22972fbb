"""wall: emit one period of a wall as a segment list (json) or a sampled polyline (csv)"""

import logging
from dataclasses import dataclass, field
from typing import List, Optional

from transformers import HfArgumentParser

from ..geometry import build_wall
from .common import OutputArguments, WallArguments, arguments_config, build_meta, emit, parse_arguments, setup_logging

logger = logging.getLogger(__name__)


@dataclass
class PolylineArguments:
    periods: int = field(default=1, metadata={"help": "Number of periods to sample"})
    points_per_arc: int = field(default=64, metadata={"help": "Polyline points per arc segment"})


def main(argv: Optional[List[str]] = None) -> int:
    parser = HfArgumentParser((WallArguments, PolylineArguments, OutputArguments))
    wall_args, poly_args, out_args = parse_arguments(parser, argv)
    setup_logging()

    wall = build_wall(wall_args.to_spec())
    meta = build_meta(out_args.seed, arguments_config(wall_args, poly_args, out_args))
    rows = [tuple(p) for p in wall.polyline(poly_args.periods, poly_args.points_per_arc).tolist()]
    logger.info(f"{wall}: {len(wall.unit_segments)} segments, {len(rows)} polyline points")
    emit(out_args, ['x', 'y'], rows, meta, payload={'wall': wall.to_dict()})
    return 0


if __name__ == "__main__":
    main()
