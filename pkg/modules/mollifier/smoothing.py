"""
Frame-Averaged Smoothing

f_κ(x) = ∫ φ(|ν|) f(g(x, κν)) dν with g(x, v) = exp_x(F(x)v), evaluated by a
tensor Gauss rule on the unit disk. Gradients are differentiated under the
integral; Hessians are finite differences of the gradient.
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from ..config.defaults import setting
from ..core.errors import DomainError, GridError, ScopeError
from ..localization.partition import smoothstep
from .charts import coordinate_frame

logger = logging.getLogger(__name__)

# ∫_0^1 r·profile(r) dr for the plateau profile below
PROFILE_MASS = 2.0 / 7.0


def plateau_profile(r):
    """1 on [0, ½], quintic decay to 0 on [½, 1], 0 beyond"""
    r = np.asarray(r, dtype=float)
    return np.where(r <= 0.5, 1.0, 1.0 - smoothstep(2.0 * r - 1.0))


def bump_density(r):
    """φ(r), normalized so that ∫φ(|ν|)dν = 1 over ℝ²"""
    return plateau_profile(r) / (2.0 * math.pi * PROFILE_MASS)


@dataclass
class MollifierConfig:
    kappa: float
    radial: Optional[int] = None
    angular: Optional[int] = None

    def __post_init__(self):
        if not self.kappa > 0:
            raise DomainError(f"Smoothing radius must be positive, got {self.kappa}")
        self.radial = setting('quadrature_radial') if self.radial is None else int(self.radial)
        self.angular = setting('quadrature_angular') if self.angular is None else int(self.angular)
        if self.radial < 2 or self.radial % 2 or self.angular < 4:
            raise GridError(f"Invalid quadrature order {self.radial}x{self.angular}")
        self.nodes, self.weights = self._build_rule()

    def _build_rule(self):
        # Gauss-Legendre on [0, ½] and [½, 1] so the kink of φ at ½ is a node boundary
        half = self.radial // 2
        x, w = np.polynomial.legendre.leggauss(half)
        radii = np.concatenate([0.25 * (x + 1.0), 0.5 + 0.25 * (x + 1.0)])
        radial_weights = np.concatenate([0.25 * w, 0.25 * w]) * radii * bump_density(radii)
        angles = 2.0 * math.pi * np.arange(self.angular) / self.angular
        nodes = (radii[:, None] * np.exp(1j * angles)[None, :]).ravel()
        weights = (radial_weights[:, None] * np.full(self.angular, 2.0 * math.pi / self.angular)[None, :]).ravel()
        return nodes, weights

    @property
    def normalization(self):
        return float(np.sum(self.weights))

    def with_kappa(self, kappa):
        return MollifierConfig(kappa, self.radial, self.angular)


@dataclass
class ScalarField:
    """
    A function on a chart with its coordinate gradient ∂f/∂x + i∂f/∂y and
    C^{1,1} constants: ℓ bounds |∇f|, β bounds the Hessian.
    """
    value: Callable
    gradient: Optional[Callable] = None
    lipschitz: float = 1.0
    beta: float = 0.0
    name: str = "f"


def constant_field(c):
    return ScalarField(lambda z: np.full(np.shape(z), float(c)),
                       lambda z: np.zeros(np.shape(z), dtype=complex), 0.0, 0.0, "constant")


def affine_field(slope, offset=0.0):
    """f(z) = Re(slope̅ z) + offset on the Euclidean plane"""
    slope = complex(slope)
    return ScalarField(lambda z: np.real(np.conj(slope) * np.asarray(z)) + offset,
                       lambda z: np.full(np.shape(z), slope, dtype=complex), abs(slope), 0.0, "affine")


def euclidean_disk_distance(radius, center=0j):
    """Euclidean distance to the closed disk |z - center| <= radius"""
    def value(z):
        return np.maximum(np.abs(np.asarray(z) - center) - radius, 0.0)

    def gradient(z):
        d = np.asarray(z, dtype=complex) - center
        r = np.abs(d)
        return np.where(r > radius, d / np.where(r > 0, r, 1.0), 0.0)

    return ScalarField(value, gradient, 1.0, 1.0 / radius, "euclidean_disk")


def hyperbolic_disk_distance(radius):
    """Hyperbolic distance to the metric disk of the given radius about 0 in the Poincaré disk"""
    edge = math.tanh(radius / 2.0)

    def value(z):
        return np.maximum(2.0 * np.arctanh(np.abs(z)) - radius, 0.0)

    def gradient(z):
        z = np.asarray(z, dtype=complex)
        r = np.abs(z)
        scale = 2.0 / (1.0 - r ** 2)
        return np.where(r > edge, scale * z / np.where(r > 0, r, 1.0), 0.0)

    # the distance to a disk of radius R has Hessian at most coth R
    return ScalarField(value, gradient, 1.0, 1.0 / math.tanh(radius), "hyperbolic_disk")


def _check_scale(cfg, chart, x):
    if cfg.kappa > chart.max_radius:
        raise ScopeError(f"κ = {cfg.kappa} exceeds the usable radius {chart.max_radius} of the {chart.name} chart")
    if not chart.contains(x):
        raise DomainError(f"Point {x} lies outside the {chart.name} chart")


def smooth(field, cfg, chart, x, frame=None):
    """f_κ(x)"""
    frame = frame or coordinate_frame()
    _check_scale(cfg, chart, x)
    points = chart.exp_frame(x, cfg.kappa * cfg.nodes, frame.angle(x))
    return float(np.sum(cfg.weights * field.value(points)))


def _coordinate_gradient(field, cfg, chart, x, frame):
    if field.gradient is None:
        raise DomainError(f"Field {field.name} carries no gradient")
    _check_scale(cfg, chart, x)
    points, A, B, C = chart.differential(x, cfg.kappa * cfg.nodes, frame.angle(x))
    G = np.conj(field.gradient(points))
    dtheta = complex(frame.angle_gradient(x))
    dx = np.real(G * (A + B + C * dtheta.real))
    dy = np.real(G * (1j * A - 1j * B + C * dtheta.imag))
    return complex(np.sum(cfg.weights * dx), np.sum(cfg.weights * dy))


def smooth_gradient(field, cfg, chart, x, frame=None):
    """∇f_κ(x) in orthonormal components"""
    frame = frame or coordinate_frame()
    return _coordinate_gradient(field, cfg, chart, x, frame) / float(chart.conformal_factor(x))


def field_gradient(field, chart, x):
    """∇f(x) in orthonormal components"""
    return complex(field.gradient(np.asarray([x]))[0]) / float(chart.conformal_factor(x))


def smooth_hessian(field, cfg, chart, x, frame=None, step=1e-4):
    """Coordinate Hessian of f_κ by central differences of the gradient"""
    frame = frame or coordinate_frame()
    columns = []
    for direction in (1.0, 1j):
        plus = _coordinate_gradient(field, cfg, chart, x + step * direction, frame)
        minus = _coordinate_gradient(field, cfg, chart, x - step * direction, frame)
        d = (plus - minus) / (2.0 * step)
        columns.append([d.real, d.imag])
    return np.array(columns).T


@dataclass
class SmoothingBounds:
    kappa: float
    value_deviation: float
    value_bound: float
    gradient_deviation: float
    gradient_bound: float
    gradient_applicable: bool
    slack: float = 1e-9

    @property
    def passed(self):
        value_ok = self.value_deviation <= self.value_bound + self.slack
        gradient_ok = not self.gradient_applicable or self.gradient_deviation <= self.gradient_bound + self.slack
        return value_ok and gradient_ok

    def to_json(self):
        return {'kappa': self.kappa, 'value_deviation': self.value_deviation,
                'value_bound': self.value_bound, 'gradient_deviation': self.gradient_deviation,
                'gradient_bound': self.gradient_bound, 'gradient_applicable': self.gradient_applicable,
                'passed': self.passed}


def smoothing_bounds(field, cfg, chart, points, frame=None):
    """
    sup |f_κ - f| against ℓκ and sup |∇f_κ - ∇f| against (ℓb + β)κ, the latter
    only claimed when bκ <= 1.
    """
    value_dev = 0.0
    gradient_dev = 0.0
    for x in points:
        value_dev = max(value_dev, abs(smooth(field, cfg, chart, x, frame) - float(field.value(np.asarray([x]))[0])))
        if field.gradient is not None:
            gradient_dev = max(gradient_dev,
                               abs(smooth_gradient(field, cfg, chart, x, frame) - field_gradient(field, chart, x)))
    b = chart.curvature_bound
    bounds = SmoothingBounds(cfg.kappa, value_dev, field.lipschitz * cfg.kappa, gradient_dev,
                             (field.lipschitz * b + field.beta) * cfg.kappa,
                             field.gradient is not None and b * cfg.kappa <= 1.0)
    logger.debug(f"Smoothing bounds at κ={cfg.kappa}: value {value_dev:.3e}, gradient {gradient_dev:.3e}")
    return bounds


def frame_independence(field, cfg, chart, frames, points):
    """max over points and frame pairs of the differences in f_κ and ∇f_κ"""
    worst = 0.0
    for x in points:
        values = [smooth(field, cfg, chart, x, frame) for frame in frames]
        gradients = [smooth_gradient(field, cfg, chart, x, frame) for frame in frames] if field.gradient else []
        worst = max(worst, max(values) - min(values))
        for g in gradients[1:]:
            worst = max(worst, abs(g - gradients[0]))
    return worst


def equivariance_check(field, cfg, chart, isometries, points, frame=None):
    """max |f_κ(γx) - f_κ(x)| for isometries γ with f∘γ = f"""
    worst = 0.0
    for gamma in isometries:
        for x in points:
            moved = complex(gamma(x))
            worst = max(worst, abs(smooth(field, cfg, chart, moved, frame) - smooth(field, cfg, chart, x, frame)))
    return worst


def monotonicity_defect(field, kappas, chart, points, frame=None, base=None):
    """
    Largest violation of f <= f_κ1 <= f_κ2 <= ... <= f + ℓκ_max for increasing κ,
    which holds for convex f on the Euclidean plane.
    """
    kappas = sorted(float(k) for k in kappas)
    base = base or MollifierConfig(kappas[0])
    worst = 0.0
    for x in points:
        f = float(field.value(np.asarray([x]))[0])
        previous = f
        for kappa in kappas:
            current = smooth(field, base.with_kappa(kappa), chart, x, frame)
            worst = max(worst, previous - current, current - (f + field.lipschitz * kappa))
            previous = current
    return max(worst, 0.0)
