"""
Model Domains

Uniform 1-D grids and their tensor products. Sections on a grid are arrays of
shape grid.shape + (r,), r being the fiber dimension.
"""

import logging

import numpy as np
from scipy.integrate import simpson, trapezoid

from ..comparison.profiles import make_grid
from ..core.errors import GridError

logger = logging.getLogger(__name__)

RULES = ('simpson', 'trapezoid')


def _second_difference(u, h, axis):
    """Three-point second derivative; one-sided second-order stencils at the ends"""
    u = np.moveaxis(u, axis, 0)
    out = np.empty_like(u, dtype=float)
    out[1:-1] = (u[2:] - 2.0 * u[1:-1] + u[:-2]) / h ** 2
    out[0] = (2.0 * u[0] - 5.0 * u[1] + 4.0 * u[2] - u[3]) / h ** 2
    out[-1] = (2.0 * u[-1] - 5.0 * u[-2] + 4.0 * u[-3] - u[-4]) / h ** 2
    return np.moveaxis(out, 0, axis)


class Grid1D:
    """Uniform nodes on [start, stop] with a composite quadrature rule"""
    dimension = 1

    def __init__(self, start, stop, count, rule='simpson'):
        if count < 4:
            raise GridError(f"A grid needs at least 4 nodes, got {count}")
        if not stop > start:
            raise GridError(f"Grid end {stop} must exceed start {start}")
        if rule not in RULES:
            raise GridError(f"Unknown quadrature rule '{rule}'")
        self.start = float(start)
        self.stop = float(stop)
        self.nodes = np.linspace(self.start, self.stop, int(count))
        self.h = (self.stop - self.start) / (count - 1)
        self.rule = rule

    @classmethod
    def with_step(cls, start, stop, h, rule='simpson'):
        nodes, _ = make_grid(start, stop, h)
        return cls(start, stop, len(nodes), rule)

    @property
    def shape(self):
        return self.nodes.shape

    @property
    def length(self):
        return self.stop - self.start

    @property
    def coordinates(self):
        return (self.nodes,)

    def integrate(self, values):
        """Integral over the interval along the leading axis"""
        if self.rule == 'simpson':
            return simpson(values, dx=self.h, axis=0)
        return trapezoid(values, dx=self.h, axis=0)

    def gradient(self, u):
        """Partial derivatives stacked on a new leading axis"""
        return np.stack([np.gradient(u, self.h, axis=0, edge_order=2)])

    def second_trace(self, u):
        """Sum of pure second derivatives"""
        return _second_difference(u, self.h, 0)

    def boundary_max(self, u, width=2):
        """Largest |u| over the first and last `width` nodes"""
        return float(max(np.max(np.abs(u[:width])), np.max(np.abs(u[-width:]))))

    def refined(self):
        return Grid1D(self.start, self.stop, 2 * len(self.nodes) - 1, self.rule)


class Grid2D:
    """Tensor product of two Grid1D factors"""
    dimension = 2

    def __init__(self, x, y):
        self.x = x
        self.y = y
        self.h = max(x.h, y.h)

    @property
    def shape(self):
        return (len(self.x.nodes), len(self.y.nodes))

    @property
    def coordinates(self):
        return tuple(np.meshgrid(self.x.nodes, self.y.nodes, indexing='ij'))

    @property
    def length(self):
        return self.x.length * self.y.length

    def integrate(self, values):
        return self.y.integrate(self.x.integrate(values))

    def gradient(self, u):
        return np.stack([np.gradient(u, self.x.h, axis=0, edge_order=2),
                         np.gradient(u, self.y.h, axis=1, edge_order=2)])

    def second_trace(self, u):
        return _second_difference(u, self.x.h, 0) + _second_difference(u, self.y.h, 1)

    def boundary_max(self, u, width=2):
        edges = [u[:width], u[-width:], u[:, :width], u[:, -width:]]
        return float(max(np.max(np.abs(e)) for e in edges))

    def refined(self):
        return Grid2D(self.x.refined(), self.y.refined())


def pointwise_norm2(u):
    """|u|² at every node for a section with a trailing fiber axis"""
    return np.sum(u * u, axis=-1)


def as_section(values):
    """Append a trailing fiber axis to scalar data"""
    values = np.asarray(values, dtype=float)
    return values[..., np.newaxis]
