import logging
from typing import List

import numpy as np

from ..geometry import WallSpec
from .base import Atom, Kernel
from .circ import CircKernel
from .rect import RectKernel
from .simple import LambertianKernel, RetroKernel, SpecularKernel
from .tri import TriKernel

logger = logging.getLogger(__name__)


class AutoKernel(Kernel):
    """Closed-form kernel chosen by name; family parameters are passed as keyword arguments"""

    def __init__(self, kernel_name: str, **kwargs) -> None:
        name = kernel_name.lower()
        if name in ['specular', 'smooth', 'flat']:
            self.kernel = SpecularKernel()
        elif name in ['retro', 'no_slip', 'retroreflection']:
            self.kernel = RetroKernel()
        elif name in ['lambertian', 'lambert', 'diffuse']:
            self.kernel = LambertianKernel()
        elif name in ['rect', 'rect_teeth']:
            self.kernel = RectKernel(**kwargs)
        elif name in ['tri', 'tri_teeth']:
            self.kernel = TriKernel(**kwargs)
        elif name in ['circ', 'circ_arcs']:
            self.kernel = CircKernel(**kwargs)
        else:
            raise ValueError(
                f"kernel_name {kernel_name} is not a valid kernel: 'specular', 'retro', 'lambertian', "
                f"'rect', 'tri', 'circ'"
            )
        self.name = self.kernel.name

    def atoms(self, theta: float) -> List[Atom]:
        return self.kernel.atoms(theta)

    def density(self, theta: float, theta_out: float) -> float:
        return self.kernel.density(theta, theta_out)

    @property
    def is_atomic(self) -> bool:
        return self.kernel.is_atomic

    def sample(self, theta: float, rng: np.random.Generator) -> float:
        return self.kernel.sample(theta, rng)

    def sample_many(self, thetas: np.ndarray, rng: np.random.Generator) -> np.ndarray:
        return self.kernel.sample_many(thetas, rng)

    def __repr__(self):
        return f"AutoKernel({self.kernel!r})"


def kernel_for_wall(spec: WallSpec) -> Kernel:
    """Closed-form kernel of a wall family, when one exists"""
    family = spec.canonical_family
    if family == 'flat':
        return SpecularKernel()
    if family == 'rect_teeth':
        return RectKernel(spec.param('r'))
    if family == 'tri_teeth':
        return TriKernel(spec.param('psi'))
    if family == 'circ_arcs':
        return CircKernel(spec.param('xi'))
    raise ValueError(f"family {spec.family} has no closed-form kernel")
