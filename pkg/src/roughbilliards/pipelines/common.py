"""Argument groups and output writers shared by the subcommand pipelines"""

import csv
import io
import json
import logging
import sys
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, Iterable, List, Optional, Sequence

from ..errors import RoughBilliardsError
from ..geometry import WallSpec
from ..kernels import AutoKernel, Kernel
from ..utils import config_hash, format_float
from ..version import __version__

logger = logging.getLogger(__name__)


class UsageError(ValueError):
    """Bad or missing command-line flags; the CLI answers with the usage grammar"""


def parse_arguments(parser, argv: Optional[List[str]]) -> tuple:
    """parse_args_into_dataclasses, with value checks in the argument groups reported as usage errors"""
    try:
        return parser.parse_args_into_dataclasses(args=argv)
    except UsageError:
        raise
    except ValueError as e:
        raise UsageError(str(e)) from e


def setup_logging(level: int = logging.INFO) -> None:
    logging.basicConfig(
        format="%(asctime)s - %(levelname)s - %(name)s - %(message)s",
        datefmt="%m/%d/%Y %H:%M:%S",
        level=level,
        stream=sys.stderr,
    )


@dataclass
class WallArguments:
    wall: Optional[str] = field(default=None, metadata={"help": "Path to a JSON wall spec"})
    family: Optional[str] = field(default=None, metadata={"help": "Wall family when no spec file is given"})
    params: Optional[str] = field(default=None, metadata={"help": "Family parameters as JSON or k=v,k=v"})
    scale: Optional[float] = field(default=None, metadata={"help": "Override the roughness scale epsilon"})
    datum: Optional[str] = field(default=None, metadata={"help": "Override the datum: half_plane or disk_wall"})

    def to_spec(self) -> WallSpec:
        if self.wall is not None:
            spec = WallSpec.from_json_file(self.wall)
        elif self.family is not None:
            try:
                params = parse_params(self.params)
            except ValueError as e:
                raise UsageError(f"cannot parse --params {self.params!r}: {e}") from e
            spec = WallSpec(family=self.family, params=params)
        else:
            raise UsageError("either --wall or --family is required")
        changes = {}
        if self.scale is not None:
            changes['scale'] = self.scale
        if self.datum is not None:
            changes['datum'] = self.datum
        return spec.with_changes(**changes) if changes else spec


@dataclass
class OutputArguments:
    seed: Optional[int] = field(default=None, metadata={"help": "Random seed; required for stochastic runs"})
    output: Optional[str] = field(default=None, metadata={"help": "Output file; stdout when omitted"})
    format: str = field(default='csv', metadata={"help": "csv or json"})
    progress: bool = field(default=False, metadata={"help": "Show a progress bar"})

    def __post_init__(self):
        if self.format not in ('csv', 'json'):
            raise ValueError(f"format must be csv or json, got {self.format}")

    def require_seed(self) -> int:
        if self.seed is None:
            raise UsageError("--seed is required for stochastic runs")
        return self.seed


def parse_params(text: Optional[str]) -> Dict[str, Any]:
    """'{"r": 0.3}' or 'r=0.3,axis_ratio=0.5' -> dict"""
    if text is None or not text.strip():
        return {}
    text = text.strip()
    if text.startswith('{'):
        return json.loads(text)
    params = {}
    for item in text.split(','):
        key, _, value = item.partition('=')
        if not _:
            raise ValueError(f"parameter {item!r} is not of the form key=value")
        params[key.strip()] = float(value)
    return params


def build_meta(seed: Optional[int], config: Dict[str, Any]) -> Dict[str, Any]:
    return {'seed': seed, 'config_hash': config_hash(config), 'version': __version__}


def arguments_config(*groups, exclude: Sequence[str] = ('output', 'progress')) -> Dict[str, Any]:
    """Canonical config mapping of parsed argument groups, without fields that do not change results"""
    config = {}
    for group in groups:
        config.update({k: v for k, v in asdict(group).items() if k not in exclude})
    return config


def _cell(value: Any) -> str:
    if isinstance(value, bool) or value is None:
        return '' if value is None else str(value).lower()
    if isinstance(value, float):
        return format_float(value)
    return str(value)


def render_csv(header: List[str], rows: Iterable[Sequence[Any]], meta: Dict[str, Any]) -> str:
    buffer = io.StringIO()
    for key, value in meta.items():
        buffer.write(f"# {key}={value}\n")
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(header)
    for row in rows:
        writer.writerow([_cell(v) for v in row])
    return buffer.getvalue()


def _json_default(value: Any) -> Any:
    # numpy scalars and arrays
    if hasattr(value, 'tolist'):
        return value.tolist()
    return str(value)


def render_json(payload: Dict[str, Any], meta: Dict[str, Any]) -> str:
    return json.dumps({'meta': meta, **payload}, indent=2, default=_json_default) + '\n'


def write_output(text: str, path: Optional[str]) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    with open(path, 'w', encoding='utf-8', newline='\n') as f:
        f.write(text)
    logger.info(f"Wrote {path}")


def emit(
    out: OutputArguments,
    header: List[str],
    rows: List[Sequence[Any]],
    meta: Dict[str, Any],
    payload: Optional[Dict[str, Any]] = None,
) -> None:
    """Rows as CSV, or as JSON records (plus any extra payload) when --format json"""
    if out.format == 'csv':
        write_output(render_csv(header, rows, meta), out.output)
    else:
        records = [dict(zip(header, row)) for row in rows]
        write_output(render_json({'rows': records, **(payload or {})}, meta), out.output)


@dataclass
class KernelParamArguments:
    r: Optional[float] = field(default=None, metadata={"help": "Depth-to-width ratio of rect teeth"})
    psi: Optional[float] = field(default=None, metadata={"help": "Apex angle of tri teeth"})
    xi: Optional[float] = field(default=None, metadata={"help": "Half-angle of circ arcs"})

    def build(self, name: str) -> Kernel:
        kwargs = {k: v for k, v in asdict(self).items() if v is not None}
        try:
            return AutoKernel(name, **kwargs)
        except RoughBilliardsError:
            raise
        except (TypeError, ValueError) as e:
            # unknown kernel name or a parameter the kernel does not take
            raise UsageError(str(e)) from e
