"""
Transverse Decay

Controls the variational derivative K of Jacobi fields along normal geodesics
of a convex body C in the hyperbolic plane, and splits the Laplacian of
ψ∘π_C into a Hessian term and a gradient term.

Along a normal geodesic c of length r with |J(r)| = 1, the component K⊥ of K
perpendicular to c solves the perturbed Jacobi equation with K⊥(r) = 0 and

    (K⊥)'(0) = S₀K⊥(0) + (∇S₀)(J, J) + (R(c', J)J)⊥

where S₀ is the second fundamental form of ∂C. The boundary problem is solved
by shooting with perturbed_jacobi_solve. In the plane (∇S₀)(J, J) = κ'(σ)|J|²,
so K⊥ vanishes identically unless the boundary curvature varies; a
CollarModel supplies boundaries with κ(σ) = κ₀ + κ₁σ and a finite-difference
oracle for them. The integral estimate

    |K⊥(0)| <= (∫₀ʳ |F||L| dt + |rem|) / (κ + a coth(ar))

with F the forcing and L the Jacobi field with L(r) = 0, |L(0)| = 1, is kept
as a separate domination check.
"""

import logging
import math
from dataclasses import dataclass
from typing import List

import numpy as np
from scipy.integrate import simpson

from ..core.errors import DomainError, GridError, PreconditionError
from ..geometry.convex import DiskBody, GeodesicBody
from ..geometry.isometry import check_interior
from .jacobi import SpaceFormModel, jacobi_solve, perturbed_jacobi_solve
from .profiles import OperatorPath, constant_profile

logger = logging.getLogger(__name__)

ORACLE_TOLERANCE = 1e-5


def boundary_curvature(body):
    """Geodesic curvature κ of ∂C: 0 for a geodesic, coth R for a disk"""
    if isinstance(body, GeodesicBody):
        return 0.0
    if isinstance(body, DiskBody):
        return 1.0 / math.tanh(body.radius)
    raise PreconditionError(f"Boundary curvature is implemented for disks and geodesics, got {body.kind}")


def boundary_parameter(body, foot, reference=None):
    """Arc length σ of a foot point on ∂C, continuous near the reference foot"""
    if isinstance(body, GeodesicBody):
        return math.log(abs(body._normalizer.apply(foot)))
    if isinstance(body, DiskBody):
        w = body.to_disk_model(foot)
        if reference is None:
            angle = math.atan2(w.imag, w.real)
        else:
            w0 = body.to_disk_model(reference)
            base = math.atan2(w0.imag, w0.real)
            turn = w * w0.conjugate()
            angle = base + math.atan2(turn.imag, turn.real)
        return angle * math.sinh(body.radius)
    raise PreconditionError(f"No boundary parametrization for {body.kind}")


def equidistant_point(body, sigma, r):
    """Point at distance r outside C whose foot point has boundary parameter σ"""
    if r < 0:
        raise DomainError(f"Distance must be non-negative, got {r}")
    if isinstance(body, GeodesicBody):
        angle = math.asin(1.0 / math.cosh(r))
        return body._inverse.apply(math.exp(sigma) * complex(math.cos(angle), math.sin(angle)))
    if isinstance(body, DiskBody):
        theta = sigma / math.sinh(body.radius)
        return body.from_disk_model(math.tanh((body.radius + r) / 2.0) * complex(math.cos(theta), math.sin(theta)))
    raise PreconditionError(f"No equidistant curves for {body.kind}")


@dataclass
class CollarModel:
    """
    Collar dt² + j(σ, t)² dσ² of curvature -a² about a boundary curve at t = 0.

    j = cosh(at) + κ(σ) sinh(at)/a with κ(σ) = κ₀ + κ₁σ, so the boundary has
    geodesic curvature κ(σ) and the curves σ = const are the normal geodesics.
    """
    kappa0: float
    kappa1: float = 0.0
    a: float = 1.0

    def kappa(self, sigma):
        return self.kappa0 + self.kappa1 * sigma

    def j(self, sigma, t):
        value = math.cosh(self.a * t) + self.kappa(sigma) * math.sinh(self.a * t) / self.a
        if value <= 0:
            raise DomainError(f"Collar coordinates degenerate at σ={sigma}, t={t}")
        return value

    def laplacian(self, f, sigma, t, step):
        """Non-negative Laplacian of f(σ, t) by central differences in divergence form"""
        j = self.j(sigma, t)
        center = f(sigma, t)
        radial = (self.j(sigma, t + step / 2) * (f(sigma, t + step) - center)
                  - self.j(sigma, t - step / 2) * (center - f(sigma, t - step)))
        along = ((f(sigma + step, t) - center) / self.j(sigma + step / 2, t)
                 - (center - f(sigma - step, t)) / self.j(sigma - step / 2, t))
        return -(radial + along) / (j * step ** 2)

    def k_perp(self, sigma, r):
        """-∂σj/j³: K⊥(0) along the normal geodesic from σ with |J(r)| = 1"""
        j_sigma = self.kappa1 * math.sinh(self.a * r) / self.a
        return -j_sigma / self.j(sigma, r) ** 3


@dataclass
class DecaySample:
    """K⊥(0) at one distance with its integral bound and collar oracle"""
    r: float
    k_perp: float
    bound: float
    oracle: float
    j0: float
    jest0: float

    @property
    def measured(self):
        return abs(self.k_perp)

    @property
    def oracle_agrees(self):
        scale = max(abs(self.oracle), abs(self.k_perp))
        return abs(self.k_perp - self.oracle) <= ORACLE_TOLERANCE * scale + 1e-15

    def to_json(self):
        return {'r': self.r, 'k_perp': self.k_perp, 'measured': self.measured, 'bound': self.bound,
                'oracle': self.oracle, 'j0': self.j0, 'jest0': self.jest0}


def decay_sample(r, kappa, a=1.0, h=1e-3, j_scale=1.0, curvature_gradient=0.0, fd_step=1e-3):
    """
    Solve for K⊥(0) along a normal geodesic of length r in curvature -a².

    J starts on ∂C with J' = κ J and is rescaled so |J(r)| = j_scale. The
    boundary curvature changes at rate curvature_gradient per unit arc length.
    K⊥(0) is found by two shots of perturbed_jacobi_solve, which is linear in
    the unknown initial value; L is the Jacobi field with L(r) = 0, |L(0)| = 1.
    """
    if not r > 0:
        raise DomainError(f"Distance must be positive, got {r}")
    profile = constant_profile(1, a)
    jpath = jacobi_solve(profile, [1.0], [kappa], r, h)
    t = jpath.t
    jr = jpath.values[-1, 0]
    J = j_scale * jpath.values[:, 0] / jr
    Jp = j_scale * jpath.derivative[:, 0] / jr

    lpath = jacobi_solve(profile, [0.0], [1.0], r, h)
    L = lpath.values[::-1, 0] / lpath.values[-1, 0]

    # c' = e1 and J = J e2
    model = SpaceFormModel(2, k0=a ** 2)
    v = np.array([1.0, 0.0])
    zeros = np.zeros_like(J)
    field = OperatorPath(t, np.stack([zeros, J], axis=1), jpath.h, kind="J",
                         derivative=np.stack([zeros, Jp], axis=1))
    J0 = field.values[0]
    remainder = curvature_gradient * J[0] ** 2 + model.R(np.zeros(2), v, J0, J0)[1]

    base = perturbed_jacobi_solve(model, v, field, r, K0=[0.0, 0.0], K0p=[0.0, remainder])
    unit = perturbed_jacobi_solve(model, v, field, r, K0=[0.0, 1.0], K0p=[0.0, remainder + kappa])
    homogeneous = unit.values[-1, 1] - base.values[-1, 1]
    k_perp = -base.values[-1, 1] / homogeneous

    # the forcing 4R(c', J)J' = -4a²JJ' c' is tangential
    forcing = 4.0 * a ** 2 * np.abs(J * Jp)
    denominator = kappa + a / math.tanh(a * r)
    bound = (simpson(forcing * np.abs(L), x=t) + abs(remainder)) / denominator

    collar = CollarModel(kappa, curvature_gradient, a)
    oracle = -j_scale ** 2 * collar.laplacian(lambda s, _t: s, 0.0, r, fd_step)
    jest0 = j_scale / (math.cosh(a * r) + kappa * math.sinh(a * r) / a)
    return DecaySample(r=float(r), k_perp=float(k_perp), bound=float(bound), oracle=float(oracle),
                       j0=float(abs(J[0])), jest0=float(jest0))


@dataclass
class DecayFit:
    """Least-squares decay rates of |K⊥(0)|, its bound and |J(0)| against r"""
    samples: List[DecaySample]
    slope: float
    intercept: float
    j0_slope: float
    bound_slope: float
    a: float = 1.0
    tolerance: float = 0.1

    @property
    def vanishes(self):
        return all(s.measured == 0.0 for s in self.samples)

    @property
    def passed(self):
        decays = self.vanishes or self.slope <= -self.a + self.tolerance
        dominated = all(s.measured <= s.bound * (1.0 + 1e-9) for s in self.samples)
        jest = all(s.j0 <= s.jest0 * (1.0 + 1e-9) for s in self.samples)
        oracle = all(s.oracle_agrees for s in self.samples)
        return decays and dominated and jest and oracle

    def to_json(self):
        return {'slope': self.slope, 'intercept': self.intercept, 'j0_slope': self.j0_slope,
                'bound_slope': self.bound_slope, 'vanishes': self.vanishes, 'passed': self.passed,
                'samples': [s.to_json() for s in self.samples]}


def transverse_decay_experiment(body, radii, h=1e-3, j_scale=1.0, curvature_gradient=0.0, fd_step=1e-3):
    """Fit ln|K⊥(0)| against r for a disk or geodesic in the hyperbolic plane"""
    radii = sorted(float(r) for r in radii)
    if len(radii) < 3:
        raise GridError(f"A decay fit needs at least 3 distances, got {len(radii)}")
    kappa = boundary_curvature(body)
    samples = [decay_sample(r, kappa, 1.0, h, j_scale, curvature_gradient, fd_step) for r in radii]
    rs = np.array(radii)
    measured = np.array([s.measured for s in samples])
    if np.all(measured == 0.0):
        slope = intercept = -math.inf
    elif np.any(measured == 0.0):
        raise DomainError("K⊥(0) vanishes at some distances only; no log-linear fit")
    else:
        slope, intercept = np.polyfit(rs, np.log(measured), 1)
    bound_slope, _ = np.polyfit(rs, np.log([s.bound for s in samples]), 1)
    j0_slope, _ = np.polyfit(rs, np.log([s.j0 for s in samples]), 1)
    logger.info(f"Transverse decay for {body.kind}: slope {slope:.4f}, bound slope {bound_slope:.4f}, "
                f"|J(0)| slope {j0_slope:.4f}")
    return DecayFit(samples, float(slope), float(intercept), float(j0_slope), float(bound_slope))


@dataclass
class LaplacianSplit:
    """Hessian and gradient parts of Δ(ψ∘π) with a finite-difference check"""
    r: float
    sigma: float
    hessian_term: float
    gradient_term: float
    gradient_bound: float
    finite_difference: float

    @property
    def total(self):
        return self.hessian_term + self.gradient_term

    @property
    def defect(self):
        return abs(self.total - self.finite_difference)

    def to_json(self):
        return {'r': self.r, 'sigma': self.sigma, 'hessian_term': self.hessian_term,
                'gradient_term': self.gradient_term, 'gradient_bound': self.gradient_bound,
                'total': self.total, 'finite_difference': self.finite_difference,
                'defect': self.defect}


def hessian_pullback_defect(body, psi, dpsi, d2psi, x, fd_step=1e-4, h=1e-3):
    """
    Split Δ(ψ∘π)(x) for ψ given on ∂C as a function of arc length.

    Δ is the non-negative Laplacian -y²(∂xx + ∂yy). The Hessian term is
    -ψ''(σ)|J(0)|² and the gradient term -ψ'(σ)K⊥(0).
    """
    x = check_interior(x)
    kappa = boundary_curvature(body)
    projection = body.project(x)
    if projection.inside:
        raise PreconditionError("hessian_pullback_defect needs x outside C")
    r = projection.dist
    foot = projection.foot
    sigma = boundary_parameter(body, foot)

    j_r = math.cosh(r) + kappa * math.sinh(r)
    hessian_term = -d2psi(sigma) / j_r ** 2
    sample = decay_sample(r, kappa, 1.0, h)
    gradient_term = -dpsi(sigma) * sample.k_perp
    gradient_bound = abs(dpsi(sigma)) * sample.bound

    def phi(z):
        return psi(boundary_parameter(body, body.foot_point(z), reference=foot))

    step = fd_step * x.imag
    laplacian = (phi(x + step) + phi(x - step) + phi(x + 1j * step) + phi(x - 1j * step)
                 - 4.0 * phi(x)) / step ** 2
    finite_difference = -x.imag ** 2 * laplacian
    return LaplacianSplit(r=float(r), sigma=float(sigma), hessian_term=float(hessian_term),
                          gradient_term=float(gradient_term), gradient_bound=float(gradient_bound),
                          finite_difference=float(finite_difference))


def collar_pullback_split(collar, psi, dpsi, d2psi, sigma, r, h=1e-3, fd_step=1e-3):
    """Split Δ(ψ∘π) at collar point (σ, r) for a boundary of varying curvature"""
    if not r > 0:
        raise PreconditionError("collar_pullback_split needs a point outside C")
    sample = decay_sample(r, collar.kappa(sigma), collar.a, h, curvature_gradient=collar.kappa1)
    hessian_term = -d2psi(sigma) / collar.j(sigma, r) ** 2
    gradient_term = -dpsi(sigma) * sample.k_perp
    gradient_bound = abs(dpsi(sigma)) * sample.bound
    finite_difference = collar.laplacian(lambda s, _t: psi(s), sigma, r, fd_step)
    return LaplacianSplit(r=float(r), sigma=float(sigma), hessian_term=float(hessian_term),
                          gradient_term=float(gradient_term), gradient_bound=float(gradient_bound),
                          finite_difference=float(finite_difference))
