"""
One-Dimensional Schrödinger Operators

-d²/dt² + W on an interval with Dirichlet conditions at both ends, discretized
by the three-point stencil on the interior nodes.
"""

import logging
from dataclasses import dataclass, field
from typing import Callable, Tuple

import numpy as np
from scipy.linalg import eigvalsh_tridiagonal

from ..core.errors import DomainError, GridError

logger = logging.getLogger(__name__)

MIN_NODES = 100


@dataclass
class Schrodinger1D:
    """W sampled at the interior nodes start + h, ..., stop - h"""
    start: float
    stop: float
    potential: np.ndarray
    h: float
    boundary: Tuple[str, str] = field(default=("dirichlet", "dirichlet"))

    def __post_init__(self):
        self.potential = np.asarray(self.potential, dtype=float)
        if not np.all(np.isfinite(self.potential)):
            raise DomainError("Potential is not finite on the grid")

    @property
    def nodes(self):
        return self.start + self.h * np.arange(1, len(self.potential) + 1)

    @property
    def size(self):
        return len(self.potential)

    def tridiagonal(self):
        diagonal = 2.0 / self.h ** 2 + self.potential
        off = np.full(self.size - 1, -1.0 / self.h ** 2)
        return diagonal, off


def from_potential(potential: Callable, start, stop, h):
    """Discretize -d² + W on [start, stop] with step h"""
    steps = int(round((stop - start) / h))
    if steps < 2:
        raise GridError(f"Interval [{start}, {stop}] is too short for step {h}")
    nodes = start + h * np.arange(1, steps)
    return Schrodinger1D(float(start), float(start + steps * h), potential(nodes), h)


def eigen_bottom(op, count=1):
    """
    Lowest eigenvalue(s) by bisection on Sturm sequences.

    Raises:
        GridError: fewer than 100 interior nodes
    """
    if op.size < MIN_NODES:
        raise GridError(f"Need at least {MIN_NODES} nodes, got {op.size}")
    diagonal, off = op.tridiagonal()
    values = eigvalsh_tridiagonal(diagonal, off, select='i', select_range=(0, count - 1),
                                  lapack_driver='stebz')
    return float(values[0]) if count == 1 else values
