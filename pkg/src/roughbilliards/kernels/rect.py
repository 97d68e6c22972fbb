"""Rectangular teeth: tops of width ε at depth 0 alternating with crevices of width ε and depth r·ε.

A ray over a top reflects specularly. Inside a crevice the ray travels 2r|cotθ| crevice widths
horizontally on its way down and back up; writing that distance as n + f (n integer, f in [0, 1)),
the fraction of crevice entry points leaving specularly is 1 - f for even n and f for odd n, and
the rest leave retro-reflected. Averaging with the tops gives rect_specular_prob.
"""

import logging
import math
from typing import List

from ..errors import BoundaryCase, InvalidParam
from .base import Atom, AtomicKernel, check_theta, merge_atoms

logger = logging.getLogger(__name__)

BOUNDARY_TOL = 1e-12


def rect_specular_prob(theta: float, r: float) -> float:
    check_theta(theta)
    if not r > 0:
        raise InvalidParam(f"r must be positive, got {r}")
    travel = 2.0 * r * abs(math.cos(theta) / math.sin(theta))
    if travel < BOUNDARY_TOL:
        # at normal incidence both atoms sit at π/2; the split is a convention
        return 0.5
    nearest = round(travel)
    if abs(travel - nearest) < BOUNDARY_TOL:
        raise BoundaryCase(f"2r|cot(theta)| = {travel!r} is an integer; the split is undefined")
    n = math.floor(travel)
    frac = travel - n
    if n % 2 == 0:
        return 1.0 - 0.5 * frac
    return 0.5 + 0.5 * frac


class RectKernel(AtomicKernel):
    """π - θ with probability rect_specular_prob(θ, r), θ otherwise"""

    name = 'rect'

    def __init__(self, r: float):
        if not r > 0:
            raise InvalidParam(f"r must be positive, got {r}")
        self.r = float(r)

    def atoms(self, theta: float) -> List[Atom]:
        p = rect_specular_prob(theta, self.r)
        return merge_atoms([Atom(math.pi - theta, p), Atom(theta, 1.0 - p)])
