from .billiard2d import ReflState, macro_reflection, reflect_lambda1, reflect_uniform, trace
from .diskwall import (
    ConfigState,
    DiskParams,
    TiltedState,
    collide,
    collide_cyl,
    collision_matrix,
    rolling_momentum,
    rough_collision_law,
    to_tilted,
)
from .errors import (
    BoundaryCase,
    Capped,
    DegenerateAngle,
    Empty,
    InvalidParam,
    MalformedCustom,
    NotIncoming,
    RoughBilliardsError,
    Singular,
    TooManySingular,
)
from .geometry import BoundarySegment, Wall, WallSpec, build_wall, foreshorten
from .kernels import (
    AutoKernel,
    Kernel,
    averaged_kernel,
    circ_arc_map,
    detailed_balance_defect,
    knudsen_exit_time,
    rect_specular_prob,
    sample_kernel,
    tri_atoms,
)
from .stats import EmpiricalDist, Report, invariance_report, ks_distance
from .utils import Limits, Tolerances, sample_rng
from .version import __version__
