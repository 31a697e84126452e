"""
Localized Operators

A = Δ + B (order 2) or A = B (order 1) on R^r-valued sections of a model grid,
with Δ = -Σ∂ᵢ² and the symmetric first-order part

    B = Σᵢ bᵢ J ∂ᵢ + ½ (div b) J + V,    J = [[0, -1], [1, 0]].

The principal symbol of B is σ_B(ξ) = i Σ bᵢξᵢ J, so ‖σ_B‖∞ = sup |b| and
V >= -c₀ pointwise.
"""

import logging

import numpy as np

from ..core.errors import DomainError
from .grids import pointwise_norm2

logger = logging.getLogger(__name__)

ROTATION = np.array([[0.0, -1.0], [1.0, 0.0]])


class LocalizedOperator:
    """Sampled coefficients of a Laplace-type or first-order operator"""

    def __init__(self, grid, fiber=1, drift=None, drift_div=None, potential=None, order=2):
        if order not in (1, 2):
            raise DomainError(f"Operator order must be 1 or 2, got {order}")
        if drift is not None and fiber != 2:
            raise DomainError("First-order terms bJ∂ need R²-valued sections")
        self.grid = grid
        self.fiber = fiber
        self.order = order
        shape = grid.shape
        if drift is None:
            self.drift = None
            self.drift_div = np.zeros(shape)
        else:
            self.drift = np.asarray(drift, dtype=float).reshape((grid.dimension,) + shape)
            self.drift_div = np.zeros(shape) if drift_div is None else np.asarray(drift_div, dtype=float)
        if potential is None:
            self.potential = np.zeros(shape + (fiber, fiber))
        else:
            potential = np.asarray(potential, dtype=float)
            if potential.shape == shape:
                potential = potential[..., None, None] * np.eye(fiber)
            if potential.shape != shape + (fiber, fiber):
                raise DomainError(f"Potential must have shape {shape + (fiber, fiber)}")
            self.potential = 0.5 * (potential + np.swapaxes(potential, -1, -2))

    @property
    def symbol_bound(self):
        """‖σ_B‖∞ (or ‖σ_A‖∞ for a first-order operator)"""
        if self.drift is None:
            return 0.0
        return float(np.max(np.sqrt(np.sum(self.drift ** 2, axis=0))))

    @property
    def c0(self):
        """Smallest c₀ >= 0 with V >= -c₀"""
        lowest = np.min(np.linalg.eigvalsh(self.potential))
        return float(max(0.0, -lowest))

    def _first_order(self, u, grad=None):
        grad = self.grid.gradient(u) if grad is None else grad
        out = np.einsum('...ij,...j->...i', self.potential, u)
        if self.drift is not None:
            for i in range(self.grid.dimension):
                out = out + self.drift[i][..., None] * (grad[i] @ ROTATION.T)
            out = out + 0.5 * self.drift_div[..., None] * (u @ ROTATION.T)
        return out

    def apply(self, u):
        """A u at every node (finite differences)"""
        u = self._check(u)
        out = self._first_order(u)
        if self.order == 2:
            out = out - self.grid.second_trace(u)
        return out

    def form(self, u):
        """<A u, u> for compactly supported u, with ‖∇u‖² in place of <Δu, u>"""
        u = self._check(u)
        grad = self.grid.gradient(u)
        value = self.grid.integrate(np.sum(self._first_order(u, grad) * u, axis=-1))
        if self.order == 2:
            value += self.grid.integrate(np.sum(grad ** 2, axis=(0, -1)))
        return float(value)

    def norm2(self, u):
        return float(self.grid.integrate(pointwise_norm2(u)))

    def _check(self, u):
        u = np.asarray(u, dtype=float)
        if u.shape != self.grid.shape + (self.fiber,):
            raise DomainError(f"Section must have shape {self.grid.shape + (self.fiber,)}, got {u.shape}")
        return u


def from_functions(grid, fiber=1, drift=None, drift_prime=None, potential=None, order=2):
    """Build a 1-D operator from callables b(x), b'(x) and V(x)"""
    x = grid.nodes
    b = None if drift is None else drift(x)
    db = None if drift_prime is None else drift_prime(x)
    V = None if potential is None else potential(x)
    return LocalizedOperator(grid, fiber, b, db, V, order)
