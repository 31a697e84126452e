"""
Smooth Convex Approximation

Smooths the distance to a convex body with boundary curvature in [α, β] and
extracts the level curve {f_κ = δ'}, which bounds a smooth strictly convex
domain between C and its η-neighbourhood. The curve is found ray by ray in the
Poincaré disk centred on the body; its geodesic curvature comes from periodic
finite differences.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import List, Tuple

import numpy as np
from scipy.optimize import brentq

from ..comparison.transverse import boundary_curvature
from ..config.defaults import setting
from ..core.errors import PreconditionError, RegularValueError
from ..core.utilities import atomic_write_csv
from .charts import PoincareDiskChart, coordinate_frame
from .smoothing import MollifierConfig, hyperbolic_disk_distance, smooth, smooth_gradient

logger = logging.getLogger(__name__)


def coth(x):
    return 1.0 / math.tanh(x)


@dataclass
class PapaParameters:
    """Constants of the construction: ε = η/3, δ = η/2, level δ' = δ/2, κ < δ/3"""
    alpha: float
    beta: float
    rho: float
    eta: float
    kappa: float

    @property
    def epsilon(self):
        return self.eta / 3.0

    @property
    def delta(self):
        return self.eta / 2.0

    @property
    def level(self):
        return self.delta / 2.0


def papa_parameters(body, rho, eta, kappa=None):
    """
    Raises:
        PreconditionError: η is not in (0, min(α, ρ)) or κ >= δ/3
    """
    alpha = boundary_curvature(body)
    beta = alpha
    if not 0.0 < eta < min(alpha, rho):
        raise PreconditionError(f"η = {eta} must lie in (0, min(α={alpha:.4g}, ρ={rho}))")
    delta = eta / 2.0
    kappa = delta / 4.0 if kappa is None else float(kappa)
    if not 0.0 < kappa < delta / 3.0:
        raise PreconditionError(f"κ = {kappa} must lie in (0, δ/3 = {delta / 3.0:.4g})")
    return PapaParameters(alpha, beta, float(rho), float(eta), kappa)


def _periodic_derivatives(z, step):
    """First and second derivatives of a periodic sample by fourth-order central differences"""
    d1 = (-np.roll(z, -2) + 8.0 * np.roll(z, -1) - 8.0 * np.roll(z, 1) + np.roll(z, 2)) / (12.0 * step)
    d2 = (-np.roll(z, -2) + 16.0 * np.roll(z, -1) - 30.0 * z + 16.0 * np.roll(z, 1) - np.roll(z, 2)) / (12.0 * step ** 2)
    return d1, d2


def geodesic_curvature(points, chart, step):
    """
    Geodesic curvature of a closed counter-clockwise curve sampled at equal
    parameter steps: k_g = (k_E + ∂_n log λ)/λ with n the outward normal.
    """
    d1, d2 = _periodic_derivatives(points, step)
    speed = np.abs(d1)
    euclidean = np.imag(np.conj(d1) * d2) / speed ** 3
    normal = -1j * d1 / speed
    normal_log = np.real(np.conj(normal) * chart.log_factor_gradient(points))
    return (euclidean + normal_log) / chart.conformal_factor(points)


@dataclass
class PapaReport:
    params: PapaParameters
    level: float
    radius: float
    distances: np.ndarray
    curvature: np.ndarray
    angles: np.ndarray
    points: np.ndarray
    attempts: int = 1
    slack: float = 0.1
    notes: List[str] = field(default_factory=list)

    @property
    def t_min(self):
        return float(np.min(self.distances))

    @property
    def t_max(self):
        return float(np.max(self.distances))

    @property
    def curvature_range(self) -> Tuple[float, float]:
        return float(np.min(self.curvature)), float(np.max(self.curvature))

    @property
    def envelope(self):
        """Curvatures of the equidistant circles through the extreme level points, widened by the slack"""
        return (coth(self.radius + self.t_max) - self.slack, coth(self.radius + self.t_min) + self.slack)

    @property
    def theorem_envelope(self):
        return (self.params.alpha - self.params.eta, self.params.beta + self.params.eta)

    @property
    def hausdorff(self):
        """Distance between {f_κ = δ'} and {f = δ'} along the rays"""
        return float(np.max(np.abs(self.distances - self.level)))

    @property
    def radius_variance(self):
        return float(np.var(self.radius + self.distances))

    @property
    def strictly_convex(self):
        return self.curvature_range[0] > 0.0

    @property
    def contained(self):
        """C ⊆ C' ⊆ U_η"""
        return self.t_min > 0.0 and self.t_max < self.params.eta

    def within(self, bounds):
        low, high = self.curvature_range
        return bounds[0] <= low and high <= bounds[1]

    @property
    def passed(self):
        return (self.strictly_convex and self.contained and self.within(self.envelope)
                and self.within(self.theorem_envelope) and self.hausdorff <= self.params.kappa)

    def to_json(self):
        low, high = self.curvature_range
        return {'kappa': self.params.kappa, 'eta': self.params.eta, 'level': self.level,
                'alpha': self.params.alpha, 'beta': self.params.beta, 'curvature_min': low,
                'curvature_max': high, 'envelope': list(self.envelope),
                'theorem_envelope': list(self.theorem_envelope), 't_min': self.t_min,
                't_max': self.t_max, 'containment_margins': [self.t_min, self.params.eta - self.t_max],
                'hausdorff': self.hausdorff, 'radius_variance': self.radius_variance,
                'attempts': self.attempts, 'passed': self.passed, 'notes': self.notes}

    def polyline_rows(self):
        return [(float(a), float(p.real), float(p.imag), float(t), float(k))
                for a, p, t, k in zip(self.angles, self.points, self.distances, self.curvature)]

    def write_polyline(self, path):
        atomic_write_csv(path, ['angle', 'x', 'y', 'distance', 'curvature'], self.polyline_rows(),
                         comments={'kappa': self.params.kappa, 'level': self.level, 'model': 'poincare_disk'})


def _trace_level(field, cfg, chart, frame, radius, level, search, angles):
    distances = np.empty(len(angles))
    points = np.empty(len(angles), dtype=complex)
    for j, phi in enumerate(angles):
        direction = complex(math.cos(phi), math.sin(phi))

        def residual(s):
            return smooth(field, cfg, chart, math.tanh(s / 2.0) * direction, frame) - level

        s = brentq(residual, radius, radius + search, xtol=1e-13)
        distances[j] = s - radius
        points[j] = math.tanh(s / 2.0) * direction
    return distances, points


def papa_pipeline(body, rho, eta, kappa=None, rays=None, frame=None):
    """
    Level curve {f_κ = δ'} of the smoothed distance to a metric disk, with its
    curvature envelope and containment report.

    Raises:
        PreconditionError: the body has no positive lower curvature bound, or the
            constants violate 0 < η < min(α, ρ), 0 < κ < δ/3
        RegularValueError: |∇f_κ| stays below the floor on the level curve after retrying
    """
    params = papa_parameters(body, rho, eta, kappa)
    rays = setting('papa_rays') if rays is None else int(rays)
    frame = frame or coordinate_frame()
    chart = PoincareDiskChart()
    radius = body.radius
    field_ = hyperbolic_disk_distance(radius)
    cfg = MollifierConfig(params.kappa)
    floor = setting('regular_value_floor')
    angles = 2.0 * math.pi * np.arange(rays) / rays

    base_level = params.level
    for attempt, level in enumerate((base_level, base_level * 0.95, base_level * 1.05), start=1):
        distances, points = _trace_level(field_, cfg, chart, frame, radius, level, params.delta, angles)
        slopes = np.array([abs(smooth_gradient(field_, cfg, chart, p, frame)) for p in points])
        if float(np.min(slopes)) >= floor:
            break
        logger.warning(f"Level {level:.4g} is not regular (min |∇f_κ| = {np.min(slopes):.3e}), retrying")
    else:
        raise RegularValueError(f"No regular level near δ' = {base_level:.4g}")

    curvature = geodesic_curvature(points, chart, 2.0 * math.pi / rays)
    report = PapaReport(params, level, radius, distances, curvature, angles, points, attempt,
                        setting('curvature_slack'))
    if attempt > 1:
        report.notes.append(f"level perturbed to {level:.6g}")
    low, high = report.curvature_range
    logger.info(f"Smoothed level curve at κ={params.kappa:.3g}: curvature in [{low:.4f}, {high:.4f}], "
                f"Hausdorff {report.hausdorff:.2e}")
    return report
