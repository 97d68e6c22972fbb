"""Command-line entry point: `rough-billiards <subcommand> [--flag value ...]`"""

import logging
import sys
from typing import List, Optional

from .errors import RoughBilliardsError
from .pipelines import SUBCOMMANDS
from .pipelines.common import UsageError

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_TEST_FAILURE = 1
EXIT_USAGE = 2
EXIT_RUNTIME = 3

GRAMMAR = """usage: rough-billiards <subcommand> [options]

subcommands:
  wall      --wall SPEC.json | --family F [--params P] [--scale S] [--datum D] [--format csv|json]
  reflect   --wall SPEC.json [--theta RAD] --samples N --seed S
  kernel    --family F [--r R | --psi PSI | --xi XI] --theta-grid K [--samples N --seed S]
  collide   --wall SPEC.json --m M --J J --eps EPS --theta RAD --psi RAD --samples N --seed S [--cyl]
  converge  --wall SPEC.json --eps-list E1 E2 ... --samples N --seed S
  knudsen   --kernel K --L LENGTH --runs N --seed S
  verify    --seed S [--quick]

common options: --output PATH, --progress; ROUGH_BILLIARDS_THREADS caps worker processes
"""


def normalize_flags(argv: List[str]) -> List[str]:
    """--theta-grid -> --theta_grid; values and --flag=value payloads are left alone"""
    out = []
    for token in argv:
        if token.startswith('--'):
            name, sep, value = token[2:].partition('=')
            token = '--' + name.replace('-', '_') + sep + value
        out.append(token)
    return out


def run(argv: Optional[List[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    if not argv or argv[0] not in SUBCOMMANDS:
        sys.stderr.write(GRAMMAR)
        return EXIT_USAGE

    main = SUBCOMMANDS[argv[0]]
    try:
        code = main(normalize_flags(argv[1:]))
    except UsageError as e:
        sys.stderr.write(f"{e}\n{GRAMMAR}")
        return EXIT_USAGE
    except SystemExit as e:
        # argparse exits 0 after --help and 2 on a parse error
        if e.code in (0, None):
            return EXIT_OK
        sys.stderr.write(GRAMMAR)
        return EXIT_USAGE
    except RoughBilliardsError as e:
        logger.error(f"{argv[0]} failed: {e}")
        sys.stderr.write(f"{e.__class__.__name__}\n")
        return EXIT_RUNTIME
    except (OSError, ValueError) as e:
        logger.error(f"{argv[0]} failed: {e}")
        sys.stderr.write(f"{e.__class__.__name__}: {e}\n")
        return EXIT_RUNTIME
    return EXIT_TEST_FAILURE if code == EXIT_TEST_FAILURE else EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
