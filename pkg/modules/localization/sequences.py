"""
Test Sequences

Moving-window sequences for potentials unbounded below and plateau quasi-modes
χ((t - c)/L) cos(kt) for half-line Schrödinger operators -d²/dt² + W(t).
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable, List, Sequence

import numpy as np

from ..core.errors import DomainError
from .grids import Grid1D, as_section
from .ims import rayleigh
from .operators import LocalizedOperator
from .partition import smoothstep

logger = logging.getLogger(__name__)


def plateau(s, ramp=0.5):
    """C² window on [-1, 1], equal to 1 on [-1 + ramp, 1 - ramp]"""
    return smoothstep((s + 1.0) / ramp) * smoothstep((1.0 - s) / ramp)


@dataclass
class WindowSequence:
    centers: List[float]
    quotients: List[float]

    @property
    def decreasing(self):
        return all(b < a for a, b in zip(self.quotients, self.quotients[1:]))

    def to_json(self):
        return {'centers': self.centers, 'quotients': self.quotients, 'decreasing': self.decreasing}


def moving_window_sequence(potential: Callable, centers: Sequence[float], half_width=1.0, h=1e-2):
    """Rayleigh quotients of -d² + V for a fixed bump translated to each center"""
    if half_width <= 0:
        raise DomainError(f"Window half width must be positive, got {half_width}")
    quotients = []
    for c in centers:
        grid = Grid1D.with_step(c - half_width, c + half_width, h)
        u = as_section(plateau((grid.nodes - c) / half_width))
        op = LocalizedOperator(grid, potential=potential(grid.nodes))
        quotients.append(rayleigh(u, op))
    logger.debug(f"Moving windows: quotients {quotients}")
    return WindowSequence([float(c) for c in centers], [float(q) for q in quotients])


@dataclass
class QuasiMode:
    """Normalized residual ‖(A - λ)u‖/‖u‖ of one plateau quasi-mode"""
    lam: float
    center: float
    length: float
    residual: float

    def to_json(self):
        return {'lambda': self.lam, 'center': self.center, 'length': self.length, 'residual': self.residual}


def quasi_mode(potential: Callable, lam, limit, center, length, h=1e-2):
    """
    Residual of u = χ((t - c)/L) cos(kt), k = sqrt(λ - limit), for -d² + W.

    limit is the value W approaches on the channel; λ must not lie below it.
    """
    if lam < limit:
        raise DomainError(f"λ={lam} lies below the channel threshold {limit}")
    if length <= 0:
        raise DomainError(f"Window length must be positive, got {length}")
    k = math.sqrt(lam - limit)
    grid = Grid1D.with_step(center - length, center + length, h)
    t = grid.nodes
    u = as_section(plateau((t - center) / length) * np.cos(k * t))
    op = LocalizedOperator(grid, potential=potential(t))
    residual = math.sqrt(op.norm2(op.apply(u) - lam * u) / op.norm2(u))
    return QuasiMode(float(lam), float(center), float(length), residual)


def quasi_mode_sequence(potential: Callable, lam, limit, lengths: Sequence[float], offset=1.0, h=1e-2):
    """Quasi-modes with growing windows pushed out along the channel"""
    return [quasi_mode(potential, lam, limit, offset + L, L, h) for L in lengths]
