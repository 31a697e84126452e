"""
Jacobi and Perturbed Jacobi Solvers

jacobi_solve integrates J'' = K(t) J along a unit-speed geodesic for a
CurvatureProfile. The perturbed equation for K = ∇J/∂s is integrated on a
curvature model over R^m (SpaceFormModel) along c(t) = t v of speed |v|:

    K'' + R(K, c')c' = 4 R(c', J)J' + ∇R(c', c', J)J - ∇R(J, J, c')c'

with K(0) = 0 and K'(0) = R(v, w)w.
"""

import logging
import math
from dataclasses import dataclass

import numpy as np

from ..core.errors import DomainError, GridError, PreconditionError
from .profiles import OperatorPath, make_grid

logger = logging.getLogger(__name__)


def _rk4_second_order(accel, grid, step, x0, v0):
    """Integrate x'' = accel(t, x, x') with RK4; returns (x, x') on the grid"""
    xs = np.empty((len(grid),) + x0.shape)
    vs = np.empty_like(xs)
    x, v = x0.astype(float), v0.astype(float)
    xs[0], vs[0] = x, v
    for k in range(len(grid) - 1):
        t = grid[k]
        k1x, k1v = v, accel(k, t, x, v, 0)
        k2x, k2v = v + 0.5 * step * k1v, accel(k, t + 0.5 * step, x + 0.5 * step * k1x, v + 0.5 * step * k1v, 1)
        k3x, k3v = v + 0.5 * step * k2v, accel(k, t + 0.5 * step, x + 0.5 * step * k2x, v + 0.5 * step * k2v, 1)
        k4x, k4v = v + step * k3v, accel(k, t + step, x + step * k3x, v + step * k3v, 2)
        x = x + step / 6.0 * (k1x + 2 * k2x + 2 * k3x + k4x)
        v = v + step / 6.0 * (k1v + 2 * k2v + 2 * k3v + k4v)
        xs[k + 1], vs[k + 1] = x, v
    return xs, vs


def jacobi_solve(profile, J0, J0p, T, h):
    """Jacobi field J'' = K(t) J on [0, T]; the path carries J' as its derivative"""
    J0 = np.atleast_1d(np.asarray(J0, dtype=float))
    J0p = np.atleast_1d(np.asarray(J0p, dtype=float))
    if J0.shape != (profile.dimension,) or J0p.shape != (profile.dimension,):
        raise DomainError(f"Initial data must have dimension {profile.dimension}")
    grid, step = make_grid(0.0, T, h)

    def accel(_k, t, x, _v, _stage):
        return profile(t) @ x

    J, Jp = _rk4_second_order(accel, grid, step, J0, J0p)
    return OperatorPath(grid, J, step, kind="J", derivative=Jp,
                        metadata={'a': profile.a, 'b': profile.b, 'profile': profile.name})


def log_derivative(path):
    """(ln|J|)' = <J, J'>/|J|² at every node where J != 0"""
    norms = np.einsum('ij,ij->i', path.values, path.values)
    inner = np.einsum('ij,ij->i', path.values, path.derivative)
    with np.errstate(divide='ignore', invalid='ignore'):
        return np.where(norms > 0, inner / norms, np.nan)


@dataclass
class RauchReport:
    """Worst slack in the Rauch II bounds for a field with J'(0) = 0"""
    derivative_excess: float
    norm_excess: float

    @property
    def passed(self):
        return self.derivative_excess <= 1e-8 and self.norm_excess <= 1e-8


def rauch_check(path, b):
    """Excess of |J'| over b tanh(bt)|J| and of |J| over cosh(bt)|J(0)|"""
    if np.linalg.norm(path.derivative[0]) > 1e-14:
        raise PreconditionError("Rauch II comparison needs J'(0) = 0")
    norms = np.linalg.norm(path.values, axis=1)
    dnorms = np.linalg.norm(path.derivative, axis=1)
    derivative_excess = np.max(dnorms - b * np.tanh(b * path.t) * norms)
    norm_excess = np.max(norms - np.cosh(b * path.t) * norms[0])
    return RauchReport(float(derivative_excess), float(norm_excess))


class SpaceFormModel:
    """
    Isotropic curvature tensor on R^m with curvature -k(x), k(x) = k0 + <g, x>.

    R(X, Y)Z = -k (<Y, Z>X - <X, Z>Y) and ∇_U R = -<g, U> R₁, where R₁ is the
    bracket in parentheses. |R₁(Y, Z)W| <= |Y||Z||W|, so ‖∇R‖ <= |g|.
    """

    def __init__(self, dimension, k0=1.0, gradient=None, derivative_bound=None, reach=1.0):
        self.dimension = dimension
        self.k0 = float(k0)
        self.gradient = np.zeros(dimension) if gradient is None else np.asarray(gradient, dtype=float)
        self.derivative_bound = derivative_bound
        self.reach = reach
        spread = np.linalg.norm(self.gradient) * reach
        if self.k0 - spread <= 0:
            raise DomainError("Curvature magnitude must stay positive on the model ball")
        self.a = math.sqrt(self.k0 - spread)
        self.b = math.sqrt(self.k0 + spread)

    @property
    def has_gradient(self):
        return bool(np.any(self.gradient != 0.0))

    def k(self, x):
        return self.k0 + float(self.gradient @ x)

    @staticmethod
    def bracket(X, Y, Z):
        return float(Y @ Z) * X - float(X @ Z) * Y

    def R(self, x, X, Y, Z):
        return -self.k(x) * self.bracket(X, Y, Z)

    def nabla_R(self, U, X, Y, Z):
        return -float(self.gradient @ U) * self.bracket(X, Y, Z)


def model_jacobi_solve(model, v, J0, J0p, T=1.0, h=1e-3):
    """Jacobi field J'' + R(J, c')c' = 0 along c(t) = t v in the model"""
    v = np.asarray(v, dtype=float)
    grid, step = make_grid(0.0, T, h)

    def accel(_k, t, x, _xp, _stage):
        return -model.R(t * v, x, v, v)

    J, Jp = _rk4_second_order(accel, grid, step, np.asarray(J0, float), np.asarray(J0p, float))
    return OperatorPath(grid, J, step, kind="J", derivative=Jp, metadata={'speed': float(np.linalg.norm(v))})


def _interpolate_stage(path, k, stage):
    if stage == 0:
        return path.values[k], path.derivative[k]
    if stage == 2:
        return path.values[k + 1], path.derivative[k + 1]
    # cubic Hermite midpoint from values and derivatives at both ends
    step = path.t[k + 1] - path.t[k]
    x0, x1 = path.values[k], path.values[k + 1]
    d0, d1 = path.derivative[k], path.derivative[k + 1]
    mid = 0.5 * (x0 + x1) + step / 8.0 * (d0 - d1)
    mid_d = 1.5 * (x1 - x0) / step - 0.25 * (d0 + d1)
    return mid, mid_d


def perturbed_jacobi_solve(model, v, jpath, T=1.0, h=None, gradient_terms=None, K0=None, K0p=None, w=None):
    """
    Solve the perturbed Jacobi equation along c(t) = t v.

    Args:
        model: SpaceFormModel
        v: velocity of the geodesic (speed |v|)
        jpath: Jacobi field J on the same grid (values and derivatives)
        T, h: grid; h defaults to the step of jpath
        gradient_terms: include the ∇R terms; defaults to model.has_gradient
        K0, K0p: initial data; by default K(0) = 0 and K'(0) = R(v, w)w with w = J(0)
        w: direction entering the default K'(0)

    Returns:
        OperatorPath of K with K' as derivative
    """
    v = np.asarray(v, dtype=float)
    if gradient_terms is None:
        gradient_terms = model.has_gradient
    if gradient_terms and model.derivative_bound is None:
        raise PreconditionError("∇R terms requested but no derivative bound b′ was supplied")
    h = jpath.h if h is None else h
    grid, step = make_grid(0.0, T, h)
    if len(grid) != len(jpath.t) or np.max(np.abs(grid - jpath.t)) > 1e-12:
        raise GridError("The J path must be sampled on the same grid as K")

    if w is None:
        w = jpath.values[0]
    K0 = np.zeros(model.dimension) if K0 is None else np.asarray(K0, dtype=float)
    K0p = model.R(np.zeros(model.dimension), v, w, w) if K0p is None else np.asarray(K0p, dtype=float)

    def accel(k, t, x, _xp, stage):
        J, Jp = _interpolate_stage(jpath, k, stage)
        position = t * v
        force = 4.0 * model.R(position, v, J, Jp)
        if gradient_terms:
            force = force + model.nabla_R(v, v, J, J) - model.nabla_R(J, J, v, v)
        return -model.R(position, x, v, v) + force

    K, Kp = _rk4_second_order(accel, grid, step, K0, K0p)
    return OperatorPath(grid, K, step, kind="K", derivative=Kp,
                        metadata={'speed': float(np.linalg.norm(v)), 'gradient_terms': gradient_terms})


def gronwall_bound(b, derivative_bound, speed, w_norm):
    """(b²|v||w|² + 16(b³ + b′)|v|²|w|²) e"""
    return (b ** 2 * speed * w_norm ** 2 + 16.0 * (b ** 3 + derivative_bound) * speed ** 2 * w_norm ** 2) * math.e


def endpoint_jacobi_defect(model, v, w, h=1e-3):
    """
    |J(1) - w| for the field with J(0) = w, J'(0) = 0, and its bound (cosh(b|v|) - 1)|w|.

    Parallel transport in the model is the identity, so w is its own translate.
    """
    w = np.asarray(w, dtype=float)
    path = model_jacobi_solve(model, v, w, np.zeros_like(w), 1.0, h)
    speed = float(np.linalg.norm(v))
    defect = float(np.linalg.norm(path.values[-1] - w))
    bound = (math.cosh(model.b * speed) - 1.0) * float(np.linalg.norm(w))
    return defect, bound
