from .base import (
    Atom,
    AtomicKernel,
    DeterministicKernel,
    Kernel,
    check_theta,
    merge_atoms,
    sample_kernel,
)
from .simple import LambertianKernel, RetroKernel, SpecularKernel
from .rect import RectKernel, rect_specular_prob
from .tri import TriKernel, tri_atoms, tri_pieces
from .circ import CircKernel, circ_arc_bounces, circ_arc_map
from .auto import AutoKernel, kernel_for_wall
from .balance import atomic_balance_defect, balance_estimate, detailed_balance_defect, random_test_functions
from .knudsen import ExitTime, knudsen_exit_time, knudsen_runs
from .averaged import AveragedKernel, atom_mass_error, averaged_kernel, empirical_atoms
