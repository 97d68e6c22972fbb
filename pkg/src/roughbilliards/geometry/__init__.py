from .segments import BoundarySegment
from .spec import FAMILIES, WallSpec, canonical_family
from .wall import Wall, build_wall, foreshorten, foreshorten_by
