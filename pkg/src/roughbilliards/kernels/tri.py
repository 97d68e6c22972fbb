"""Triangular teeth with groove angle psi, solved by unfolding the groove around its apex.

Coordinates put the apex at the origin with the groove opening upward; the peaks are the
vertices W_0 = (1/2, a) and W_1 = (-1/2, a), a = ½·cot(psi/2), at distance L = ½·csc(psi/2).
Reflecting the groove across its faces produces a fan of copies whose vertices are
W_i = L·(cos φ_i, sin φ_i), φ_i = π/2 + (2i - 1)·psi/2. An incoming ray is the line of constant
offset h = <p, u> with u = (-sin θ, cos θ); it leaves through the chord W_k W_{k+1} (or
W_{-k} W_{-k+1}) whose endpoints straddle the line, after k reflections.
"""

import logging
import math
from typing import List, Tuple

from ..errors import InvalidParam, Singular
from .base import Atom, AtomicKernel, check_theta, merge_atoms

logger = logging.getLogger(__name__)

BOUNDARY_TOL = 1e-12


def _vertex_offset(i: int, theta: float, psi: float, L: float) -> float:
    return L * math.cos((2 * i - 1) * psi / 2 - theta)


def _exit_angle(h: float, theta: float, psi: float, L: float, max_walk: int) -> float:
    """Real outgoing direction of the ray with offset h, reduced into (0, π)"""
    if h > 0:
        for i in range(2, max_walk):
            if _vertex_offset(i, theta, psi, L) < h:
                k = i - 1
                break
        else:
            raise Singular(f"unfolded ray with offset {h} never leaves the fan")
        j, odd = divmod(k, 2)
        angle = (2 * j + 1) * psi - theta if odd else math.pi + theta - 2 * j * psi
    else:
        for i in range(1, max_walk):
            if _vertex_offset(-i, theta, psi, L) > h:
                k = i
                break
        else:
            raise Singular(f"unfolded ray with offset {h} never leaves the fan")
        j, odd = divmod(k, 2)
        angle = -(2 * j + 1) * psi - theta if odd else math.pi + theta + 2 * j * psi
    angle = math.fmod(angle, 2 * math.pi)
    if angle < 0:
        angle += 2 * math.pi
    if not 0.0 < angle < math.pi:
        raise Singular(f"unfolded exit direction {angle} does not point upward")
    return angle


def tri_pieces(theta: float, psi: float) -> List[Tuple[float, float, float]]:
    """(h_lo, h_hi, exit angle) for each piece of the entry-offset interval"""
    check_theta(theta)
    if not 0 < psi < math.pi:
        raise InvalidParam(f"psi must lie in (0, pi), got {psi}")
    a = 0.5 / math.tan(psi / 2)
    L = 0.5 / math.sin(psi / 2)
    half = 0.5 * math.sin(theta)
    lo, hi = a * math.cos(theta) - half, a * math.cos(theta) + half
    max_walk = int(2 * math.pi / psi) + 6

    cuts = {0.0}
    for i in range(-max_walk, max_walk + 1):
        cuts.add(_vertex_offset(i, theta, psi, L))
    # cuts landing on the interval ends are copies of the peaks themselves and add nothing
    tol = BOUNDARY_TOL * max(1.0, hi - lo)
    inner = sorted(c for c in cuts if lo + tol < c < hi - tol)
    edges = [lo] + inner + [hi]
    pieces = []
    for left, right in zip(edges[:-1], edges[1:]):
        if right - left <= 0.0:
            continue
        pieces.append((left, right, _exit_angle(0.5 * (left + right), theta, psi, L, max_walk)))
    return pieces


def tri_atoms(theta: float, psi: float) -> List[Atom]:
    width = math.sin(theta)
    atoms = [Atom(angle, (right - left) / width) for left, right, angle in tri_pieces(theta, psi)]
    return merge_atoms(atoms, tol=1e-9)


class TriKernel(AtomicKernel):
    name = 'tri'

    def __init__(self, psi: float):
        if not 0 < psi < math.pi:
            raise InvalidParam(f"psi must lie in (0, pi), got {psi}")
        self.psi = float(psi)

    def atoms(self, theta: float) -> List[Atom]:
        return tri_atoms(theta, self.psi)
