import hashlib
import json
import logging
import math
import os
from dataclasses import dataclass
from typing import Any, Callable, List, Optional, Sequence

import numpy as np
from tqdm import tqdm
from tqdm.contrib.concurrent import process_map

logger = logging.getLogger(__name__)

THREADS_ENV = "ROUGH_BILLIARDS_THREADS"


@dataclass(frozen=True)
class Tolerances:
    tangency: float = 1e-9
    endpoint: float = 1e-11
    residual: float = 1e-12


@dataclass(frozen=True)
class Limits:
    """Stopping rule of a single trajectory. max_time is measured in physical length units at unit speed."""

    max_bounces: int = 10**6
    max_time: float = math.inf

    def __post_init__(self):
        if self.max_bounces < 1:
            raise ValueError(f"max_bounces must be positive, got {self.max_bounces}")
        if not self.max_time > 0:
            raise ValueError(f"max_time must be positive, got {self.max_time}")


DEFAULT_TOLERANCES = Tolerances()
DEFAULT_LIMITS = Limits()


def sample_rng(seed: int, index: int) -> np.random.Generator:
    """
    Counter-based substream for Monte Carlo sample `index`.
    Word 1 of the Philox counter carries the index, so streams never overlap and
    the draw of a sample does not depend on batch layout or worker count.
    """
    return np.random.Generator(np.random.Philox(key=int(seed), counter=[0, int(index), 0, 0]))


def batch_rng(seed: int, stream: int = 0) -> np.random.Generator:
    """Generator for vectorized draws, keyed by seed and a stream id"""
    return np.random.default_rng([int(seed), int(stream)])


def get_num_workers() -> int:
    value = os.environ.get(THREADS_ENV)
    if value is None or value.strip() == "":
        return 1
    try:
        num = int(value)
    except ValueError:
        logger.warning(f"Ignoring non-integer {THREADS_ENV}={value!r}")
        return 1
    return max(1, min(num, os.cpu_count() or 1))


def parallel_map(
    fn: Callable[[Any], Any],
    items: Sequence[Any],
    desc: Optional[str] = None,
    progress: bool = False,
    chunksize: int = 256,
) -> List[Any]:
    """
    Ordered map over independent samples. Runs in-process unless ROUGH_BILLIARDS_THREADS > 1,
    in which case `fn` must be picklable (module-level function or functools.partial of one).
    """
    workers = get_num_workers()
    if workers <= 1 or len(items) < 2 * chunksize:
        return [fn(item) for item in tqdm(items, desc=desc, disable=not progress)]
    logger.info(f"Running {len(items)} samples on {workers} workers")
    return process_map(fn, items, max_workers=workers, chunksize=chunksize, desc=desc, disable=not progress)


def config_hash(config: Any) -> str:
    """sha256 of the canonical JSON rendering of a config mapping"""
    payload = json.dumps(config, sort_keys=True, separators=(",", ":"), default=str)
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()


def format_float(value: float) -> str:
    """17 significant digits, round-trip safe"""
    return format(float(value), ".17g")


def wrap_angle(angle: float) -> float:
    """Reduce an angle into [0, 2π)"""
    reduced = math.fmod(angle, 2 * math.pi)
    if reduced < 0:
        reduced += 2 * math.pi
    return reduced
