import json
import logging
import math
from typing import Any, Dict, Optional

from pydantic import BaseModel
from pydantic import Field as pydantic_Field

from ..errors import InvalidParam

logger = logging.getLogger(__name__)

FAMILIES = ('flat', 'rect_teeth', 'tri_teeth', 'circ_arcs', 'ell_arcs', 'custom')
DATUMS = ('half_plane', 'disk_wall')

FAMILY_ALIASES = {
    'flat': 'flat',
    'rect': 'rect_teeth',
    'rect_teeth': 'rect_teeth',
    'tri': 'tri_teeth',
    'tri_teeth': 'tri_teeth',
    'circ': 'circ_arcs',
    'circ_arcs': 'circ_arcs',
    'ell': 'ell_arcs',
    'ell_arcs': 'ell_arcs',
    'custom': 'custom',
}


class WallSpec(BaseModel):
    """JSON wall-spec schema: {"family": str, "params": {...}, "scale": num, "datum": str}"""

    family: str = pydantic_Field(description="Cell family: flat, rect_teeth, tri_teeth, circ_arcs, ell_arcs, custom.")
    params: Dict[str, Any] = pydantic_Field(description="Family parameters, e.g. r, psi, xi, axis_ratio.", default={})
    scale: float = pydantic_Field(description="Roughness scale epsilon.", default=1.0)
    datum: str = pydantic_Field(description="half_plane or disk_wall.", default='half_plane')

    @property
    def canonical_family(self) -> str:
        return canonical_family(self.family)

    def param(self, name: str, default: Optional[float] = None) -> float:
        if name not in self.params:
            if default is None:
                raise InvalidParam(f"family {self.family} requires parameter {name!r}")
            return default
        return float(self.params[name])

    def with_changes(self, **changes) -> "WallSpec":
        data = self.to_dict()
        data.update(changes)
        return WallSpec(**data)

    def to_dict(self) -> Dict[str, Any]:
        return {'family': self.family, 'params': dict(self.params), 'scale': self.scale, 'datum': self.datum}

    @classmethod
    def from_json_file(cls, path: str) -> "WallSpec":
        with open(path, 'r', encoding='utf-8') as f:
            data = json.load(f)
        logger.info(f"Loaded wall spec {data} from {path}")
        return cls(**data)


def canonical_family(family: str) -> str:
    name = FAMILY_ALIASES.get(str(family).strip().lower())
    if name is None:
        raise InvalidParam(f"family {family!r} is not a valid family: {', '.join(FAMILIES)}")
    return name


def validate_spec(spec: WallSpec) -> None:
    family = spec.canonical_family
    if not (spec.scale > 0 and math.isfinite(spec.scale)):
        raise InvalidParam(f"scale must be positive and finite, got {spec.scale}")
    if spec.datum not in DATUMS:
        raise InvalidParam(f"datum {spec.datum!r} is not one of {DATUMS}")

    if family == 'flat':
        if not spec.param('depth', 0.0) >= 0:
            raise InvalidParam(f"flat depth must be non-negative, got {spec.params['depth']}")
    elif family == 'rect_teeth':
        r = spec.param('r')
        if not r > 0:
            raise InvalidParam(f"rect_teeth ratio r must be positive, got {r}")
    elif family == 'tri_teeth':
        psi = spec.param('psi')
        if not 0 < psi < math.pi:
            raise InvalidParam(f"tri_teeth angle psi must lie in (0, pi), got {psi}")
    elif family in ('circ_arcs', 'ell_arcs'):
        xi = spec.param('xi')
        if not 0 < xi <= math.pi / 2:
            raise InvalidParam(f"arc angle xi must lie in (0, pi/2], got {xi}")
        if family == 'ell_arcs':
            ratio = spec.param('axis_ratio')
            if not ratio > 0:
                raise InvalidParam(f"ell_arcs axis_ratio must be positive, got {ratio}")
    elif family == 'custom':
        if not spec.params.get('segments'):
            raise InvalidParam("custom family requires a non-empty 'segments' list")
