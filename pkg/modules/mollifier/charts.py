"""
Charts and Frames

Model surfaces with a closed-form exponential map in a smooth orthonormal
frame. Points are complex coordinates; tangent vectors are complex numbers of
orthonormal components in the frame rotated by θ(x).
"""

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from ..core.errors import DomainError


class EuclideanChart:
    """ℝ² with the flat metric: g(x, v) = x + e^{iθ}v"""
    name = "euclidean"
    curvature_bound = 0.0
    max_radius = math.inf

    def contains(self, z):
        return True

    def conformal_factor(self, z):
        return np.ones_like(np.abs(z))

    def log_factor_gradient(self, z):
        return np.zeros_like(np.asarray(z, dtype=complex))

    def exp_frame(self, x, v, theta):
        return x + np.exp(1j * theta) * v

    def differential(self, x, v, theta):
        """g(x, v) and the coefficients of dg = Aδ + Bδ̄ + C(∇θ·δ)"""
        rotated = np.exp(1j * theta) * v
        one = np.ones_like(rotated)
        return x + rotated, one, np.zeros_like(rotated), 1j * rotated

    def distance(self, z, w):
        return np.abs(np.asarray(z) - np.asarray(w))


class PoincareDiskChart:
    """
    The unit disk with metric λ²|dz|², λ = 2/(1-|z|²). The frame at x is the
    push-forward of the standard frame at 0 by T_x(z) = (z + x)/(1 + x̄z), which
    is parallel along the geodesic from the origin.
    """
    name = "poincare"
    curvature_bound = 1.0
    # tanh saturates in double precision beyond this hyperbolic radius
    max_radius = 16.0

    def contains(self, z):
        return bool(np.all(np.abs(z) < 1.0))

    def conformal_factor(self, z):
        return 2.0 / (1.0 - np.abs(z) ** 2)

    def log_factor_gradient(self, z):
        """∇ log λ as a complex number"""
        return 2.0 * np.asarray(z, dtype=complex) / (1.0 - np.abs(z) ** 2)

    def _disk_vector(self, v, theta):
        v = np.asarray(v, dtype=complex)
        length = np.abs(v)
        safe = np.where(length > 0.0, length, 1.0)
        return np.exp(1j * theta) * np.tanh(length / 2.0) * v / safe

    def exp_frame(self, x, v, theta):
        if abs(x) >= 1.0:
            raise DomainError(f"Point {x} lies outside the Poincaré disk")
        a = self._disk_vector(v, theta)
        return (a + x) / (1.0 + np.conj(x) * a)

    def differential(self, x, v, theta):
        if abs(x) >= 1.0:
            raise DomainError(f"Point {x} lies outside the Poincaré disk")
        a = self._disk_vector(v, theta)
        denominator = 1.0 + np.conj(x) * a
        A = 1.0 / denominator
        B = -(a + x) * a / denominator ** 2
        C = 1j * a * (1.0 - abs(x) ** 2) / denominator ** 2
        return (a + x) / denominator, A, B, C

    def distance(self, z, w):
        z, w = np.asarray(z, dtype=complex), np.asarray(w, dtype=complex)
        return 2.0 * np.arctanh(np.abs(z - w) / np.abs(1.0 - np.conj(w) * z))


def origin_distance(z):
    """Hyperbolic distance from 0 in the Poincaré disk"""
    return 2.0 * np.arctanh(np.abs(z))


def disk_point(s, angle):
    """Point at hyperbolic distance s from 0 in direction angle"""
    return math.tanh(s / 2.0) * complex(math.cos(angle), math.sin(angle))


def translation(b):
    """The disk isometry z ↦ (z + b)/(1 + b̄z)"""
    if abs(b) >= 1.0:
        raise DomainError(f"Translation parameter {b} lies outside the disk")
    return lambda z: (z + b) / (1.0 + np.conj(b) * z)


def rotation(angle):
    return lambda z: np.exp(1j * angle) * z


@dataclass
class FrameField:
    """Orthonormal frame rotated by θ(x) from the chart's coordinate frame"""
    angle: Callable
    angle_gradient: Callable
    name: str = "frame"


def coordinate_frame():
    return FrameField(lambda x: 0.0, lambda x: 0j, "coordinate")


def rotated_frame(offset=0.0, slope=0.0 + 0.0j):
    """θ(x) = offset + Re(slope̅ x), a smooth non-constant rotation when slope ≠ 0"""
    slope = complex(slope)
    return FrameField(lambda x: offset + float(np.real(np.conj(slope) * x)),
                      lambda x: slope, f"rotated({offset:g})")
