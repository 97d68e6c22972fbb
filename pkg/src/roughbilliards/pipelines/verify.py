"""verify: run the acceptance suite and write a JSON report; exit 1 when any check fails"""

import logging
from dataclasses import asdict, dataclass, field
from typing import List, Optional

from transformers import HfArgumentParser

from ..stats.report import Report
from ..stats.verify import VerifyConfig, run_verify
from .common import OutputArguments, build_meta, parse_arguments, render_json, setup_logging, write_output

logger = logging.getLogger(__name__)


@dataclass
class VerifyArguments:
    quick: bool = field(default=False, metadata={"help": "Small sample sizes for a smoke run"})


def render_verify(reports: List[Report], cfg: VerifyConfig, seed: int, quick: bool) -> str:
    meta = build_meta(seed, {'quick': quick, 'config': asdict(cfg)})
    return render_json({'tests': [r.to_dict() for r in reports]}, meta)


def main(argv: Optional[List[str]] = None) -> int:
    parser = HfArgumentParser((VerifyArguments, OutputArguments))
    verify_args, out_args = parse_arguments(parser, argv)
    setup_logging()

    seed = out_args.require_seed()
    cfg = VerifyConfig.quick() if verify_args.quick else VerifyConfig()
    reports = run_verify(cfg, seed)

    failed = [r.name for r in reports if not r.passed]
    write_output(render_verify(reports, cfg, seed, verify_args.quick), out_args.output)
    if failed:
        logger.warning(f"{len(failed)} of {len(reports)} checks failed: {', '.join(failed)}")
        return 1
    logger.info(f"All {len(reports)} checks passed")
    return 0


if __name__ == "__main__":
    main()
