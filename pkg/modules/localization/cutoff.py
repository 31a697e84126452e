"""
Cutoff Decay

Measures sup |∇(ψ∘π_H)| on the curve at distance r from a disk or geodesic H,
for a bump ψ on ∂H with |ψ'| <= C₀. The nearest-point map contracts by at
least cosh(r), so the measurement is at most C₀/cosh(r).
"""

import logging
import math
from dataclasses import dataclass
from typing import List

import numpy as np

from ..comparison.transverse import boundary_parameter, equidistant_point
from ..core.errors import GridError
from .partition import SMOOTHSTEP_SLOPE, Bump

logger = logging.getLogger(__name__)


@dataclass
class BoundaryBump:
    """ψ(σ) as a function of arc length on ∂H with slope bound C₀"""
    bump: Bump
    slope: float
    scale: float = 1.0

    def __call__(self, sigma):
        return self.scale * float(self.bump.evaluate(np.array([sigma]))[0][0])

    def derivative(self, sigma):
        return self.scale * float(self.bump.evaluate(np.array([sigma]))[1][0])

    @property
    def support(self):
        return (self.bump.left, self.bump.right)


def boundary_bump(left, right, width=SMOOTHSTEP_SLOPE, scale=1.0):
    """Bump with ramps of the given width; the default width makes C₀ = scale"""
    bump = Bump(left, right, width)
    if right - left < 2.0 * width:
        logger.debug("Bump ramps overlap; slope bound is an over-estimate")
    return BoundaryBump(bump, scale * SMOOTHSTEP_SLOPE / width, scale)


def constant_bump(value=1.0):
    """ψ ≡ value on ∂H, with C₀ = 0"""
    return BoundaryBump(Bump(-math.inf, math.inf, 1.0, open_left=True, open_right=True), 0.0, value)


@dataclass
class CutoffProfile:
    radii: List[float]
    measured: List[float]
    bounds: List[float]
    slack: float = 1e-6

    @property
    def dominated(self):
        return all(m <= b + self.slack for m, b in zip(self.measured, self.bounds))

    @property
    def monotone(self):
        return all(b <= a + self.slack for a, b in zip(self.measured, self.measured[1:]))

    @property
    def passed(self):
        return self.dominated and self.monotone

    def ratios(self):
        """measured(r_k+1)/measured(r_k)"""
        return [b / a if a > 0 else 0.0 for a, b in zip(self.measured, self.measured[1:])]

    def to_json(self):
        return {'radii': self.radii, 'measured': self.measured, 'bounds': self.bounds,
                'passed': self.passed}


def _hyperbolic_gradient(phi, z, fd_step):
    step = fd_step * z.imag
    dx = (phi(z + step) - phi(z - step)) / (2.0 * step)
    dy = (phi(z + 1j * step) - phi(z - 1j * step)) / (2.0 * step)
    return z.imag * math.hypot(dx, dy)


def cutoff_decay_profile(body, psi: BoundaryBump, radii, samples=201, fd_step=1e-5):
    """
    Sample sup |∇(ψ∘π_H)| at each distance r along the equidistant curve.

    Raises:
        GridError: radii are not strictly increasing
    """
    radii = [float(r) for r in radii]
    if not radii or any(b <= a for a, b in zip(radii, radii[1:])) or radii[0] <= 0:
        raise GridError("Radii must be positive and strictly increasing")
    left, right = psi.support
    if math.isinf(left) or math.isinf(right):
        sigmas = np.linspace(-1.0, 1.0, samples)
    else:
        sigmas = np.linspace(left, right, samples)

    measured, bounds = [], []
    for r in radii:
        best = 0.0
        for sigma in sigmas:
            z = equidistant_point(body, float(sigma), r)
            foot = body.foot_point(z)
            phi = lambda w: psi(boundary_parameter(body, body.foot_point(w), reference=foot))
            best = max(best, _hyperbolic_gradient(phi, z, fd_step))
        measured.append(best)
        bounds.append(psi.slope / math.cosh(r))
    logger.info(f"Cutoff decay for {body.kind}: {['%.3e' % m for m in measured]}")
    return CutoffProfile(radii, measured, bounds)
