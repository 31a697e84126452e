"""
IMS Localization

Checks the localization identity

    Σ_V <A(ψ_V u), ψ_V u> = <A u, u> + Σ_V ∫ |∇ψ_V|² |u|²

for Laplace-type A and partitions with Σψ_V² = 1, together with the
Rayleigh-quotient and pointwise estimates that follow from it.
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy.linalg import eigh

from ..comparison.profiles import convergence_order
from ..core.errors import DomainError, PreconditionError
from .grids import Grid1D, pointwise_norm2
from .operators import ROTATION

logger = logging.getLogger(__name__)


def _require_compact(u, grid):
    scale = float(np.max(np.abs(u)))
    if scale == 0.0:
        return
    if grid.boundary_max(u) > 1e-12 * scale:
        raise DomainError("Section touches the grid boundary; it must be compactly supported inside")


def _support_mask(u):
    norms = pointwise_norm2(u)
    return norms > 1e-28 * np.max(norms)


@dataclass
class DefectReport:
    """Result of an identity check on one grid"""
    identity: str
    grid_h: float
    lhs: float
    rhs: float
    defect: float
    rate_estimate: float = math.nan

    @property
    def relative(self):
        return abs(self.defect) / max(abs(self.rhs), 1e-300)

    @property
    def constant(self):
        """C in |defect| <= C h²"""
        return abs(self.defect) / self.grid_h ** 2

    def to_json(self):
        return {'identity': self.identity, 'grid_h': self.grid_h, 'lhs': self.lhs, 'rhs': self.rhs,
                'defect': self.defect, 'relative': self.relative, 'constant': self.constant,
                'rate_estimate': self.rate_estimate}


def rayleigh(u, op):
    """Ray_A(u) = <A u, u> / ‖u‖²"""
    norm = op.norm2(u)
    if not norm > 0.0:
        raise DomainError("Rayleigh quotient of the zero section")
    return op.form(u) / norm


def ims_identity_defect(u, part, op):
    """Evaluate both sides of the localization identity on the grid"""
    if op.order != 2:
        raise PreconditionError("The localization identity is stated for Laplace-type operators")
    u = np.asarray(u, dtype=float)
    _require_compact(u, op.grid)
    lhs = sum(op.form(psi[..., None] * u) for psi in part.values)
    gradient_term = op.grid.integrate(np.sum(part.gradient_norm2(), axis=0) * pointwise_norm2(u))
    rhs = op.form(u) + float(gradient_term)
    return DefectReport('ims', float(op.grid.h), float(lhs), float(rhs), float(lhs - rhs))


def ims_refinement(build: Callable, grids: Sequence):
    """
    Run ims_identity_defect over successively finer grids.

    build(grid) returns (u, part, op) on that grid. The last report carries the
    least-squares order of |defect| against h.
    """
    reports = [ims_identity_defect(*build(grid)) for grid in grids]
    errors = [abs(r.defect) for r in reports]
    hs = [r.grid_h for r in reports]
    rate = convergence_order(errors, hs)
    for report in reports:
        report.rate_estimate = rate
    logger.info(f"IMS refinement over {len(reports)} grids: rate {rate:.3f}")
    return reports


@dataclass
class BestPiece:
    """The piece V with the smallest Rayleigh quotient and the bound it must meet"""
    index: int
    rayleigh: float
    base: float
    bound: float
    local_bound: float
    slack: float = 1e-6

    @property
    def passed(self):
        return self.rayleigh <= self.bound + self.slack * max(1.0, abs(self.bound))

    def to_json(self):
        return {'index': self.index, 'rayleigh': self.rayleigh, 'base': self.base,
                'bound': self.bound, 'local_bound': self.local_bound, 'passed': self.passed}


def best_piece(u, part, op):
    """
    Pick V minimizing Ray_A(ψ_V u).

    bound is Ray_A(u) + Σ_V ‖∇ψ_V‖²_{supp u,∞}; local_bound replaces the sup
    norms by ∫|∇ψ_V|²|u|²/‖u‖².
    """
    u = np.asarray(u, dtype=float)
    base = rayleigh(u, op)
    total = op.norm2(u)
    mask = _support_mask(u)
    quotients = []
    for k, psi in enumerate(part.values):
        piece = psi[..., None] * u
        if op.norm2(piece) <= 1e-24 * total:
            continue
        quotients.append((rayleigh(piece, op), k))
    # Σψ² = 1 and u != 0 leave at least one piece
    assert quotients, "every localized piece vanished"
    value, index = min(quotients)
    bound = base + float(np.sum(part.sup_gradient2(mask)))
    local = base + float(op.grid.integrate(np.sum(part.gradient_norm2(), axis=0) * pointwise_norm2(u))) / total
    return BestPiece(index, float(value), float(base), bound, local)


@dataclass
class PointwiseCheck:
    """Nodewise comparison lhs <= rhs with the worst excess"""
    name: str
    lhs: np.ndarray
    rhs: np.ndarray
    slack: float = 1e-6

    @property
    def excess(self):
        return float(np.max(self.lhs - self.rhs))

    @property
    def passed(self):
        return self.excess <= self.slack * max(1.0, float(np.max(self.rhs)))

    @property
    def ratio(self):
        """Largest lhs/rhs over nodes where rhs is non-negligible"""
        significant = self.rhs > 1e-12 * max(float(np.max(self.rhs)), 1e-300)
        if not np.any(significant):
            return 0.0
        return float(np.max(self.lhs[significant] / self.rhs[significant]))

    def to_json(self):
        return {'name': self.name, 'excess': self.excess, 'ratio': self.ratio, 'passed': self.passed}


def first_order_defect(u, lam, part, op):
    """
    Σ_V |A(ψ_V u) - λψ_V u|² against 2|Au - λu|² + 2 ‖σ_A‖∞² Σ_V ‖∇ψ_V‖²_{supp u,∞} |u|².
    """
    if op.order != 1:
        raise PreconditionError("first_order_defect needs a first-order operator")
    u = np.asarray(u, dtype=float)
    mask = _support_mask(u)
    lhs = sum(pointwise_norm2(op.apply(psi[..., None] * u) - lam * psi[..., None] * u) for psi in part.values)
    residual = pointwise_norm2(op.apply(u) - lam * u)
    cutoff = float(np.sum(part.sup_gradient2(mask)))
    rhs = 2.0 * residual + 2.0 * op.symbol_bound ** 2 * cutoff * pointwise_norm2(u)
    return PointwiseCheck('partition1', lhs, rhs)


def second_order_defect(u, lam, part, op):
    """
    Σ_V |(A-λ)(ψ_V u)|² against

        4|(A-λ)u|² + 16 Σ‖∇ψ_V‖²|∇u|² + 4 Σ(‖Δψ_V‖² + ‖σ_B‖²‖∇ψ_V‖²)|u|²

    with sup norms over supp u.
    """
    if op.order != 2:
        raise PreconditionError("second_order_defect needs a Laplace-type operator")
    if part.second is None:
        raise PreconditionError("second_order_defect needs second derivatives of the partition")
    u = np.asarray(u, dtype=float)
    mask = _support_mask(u)
    lhs = sum(pointwise_norm2(op.apply(psi[..., None] * u) - lam * psi[..., None] * u) for psi in part.values)
    residual = pointwise_norm2(op.apply(u) - lam * u)
    grad_u2 = np.sum(op.grid.gradient(u) ** 2, axis=(0, -1))
    gradients = float(np.sum(part.sup_gradient2(mask)))
    laplacians = float(np.sum(part.sup_laplacian2(mask)))
    rhs = (4.0 * residual + 16.0 * gradients * grad_u2
           + 4.0 * (laplacians + op.symbol_bound ** 2 * gradients) * pointwise_norm2(u))
    return PointwiseCheck('partition2', lhs, rhs)


def operator_lower_bound(c0, sigma):
    """-(c₀ + σ²): the lower bound of a Laplace-type form with V >= -c₀ and ‖σ_B‖∞ <= σ"""
    if sigma < 0:
        raise DomainError(f"Symbol bound must be non-negative, got {sigma}")
    return -(c0 + sigma ** 2)


def form_minimum(op):
    """
    Smallest Rayleigh quotient of the discretized form on a 1-D grid with
    Dirichlet ends: forward-difference gradient, symmetrized bJ∂ term.
    """
    grid = op.grid
    if not isinstance(grid, Grid1D) or op.order != 2:
        raise PreconditionError("form_minimum is implemented for Laplace-type operators on 1-D grids")
    n = len(grid.nodes) - 2
    r = op.fiber
    h = grid.h
    stiffness = (2.0 * np.eye(n) - np.eye(n, k=1) - np.eye(n, k=-1)) / h
    matrix = np.kron(stiffness, np.eye(r))
    if op.drift is not None:
        central = (np.eye(n, k=1) - np.eye(n, k=-1)) / (2.0 * h)
        drift = np.kron(np.diag(op.drift[0][1:-1]) @ central, ROTATION) * h
        matrix += 0.5 * (drift + drift.T)
    potential = op.potential[1:-1]
    for k in range(n):
        matrix[k * r:(k + 1) * r, k * r:(k + 1) * r] += h * potential[k]
    lowest = eigh(matrix / h, eigvals_only=True, subset_by_index=[0, 0])[0]
    return float(lowest)
