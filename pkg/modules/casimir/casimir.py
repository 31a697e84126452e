"""
Casimir Operator

The Casimir of a representation, its split into rough Laplacian plus
potential, the curvature form of the potential on Λ^k𝔭, the symbol
compatibility report and the covariant derivative of equivariant curves.
"""

import logging
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np
from scipy.linalg import cholesky, expm, logm, polar

from ..core.errors import PreconditionError
from .representation import exterior_power_action, isotropy_matrix, isotropy_representation

logger = logging.getLogger(__name__)


def _max_abs(m):
    return float(np.max(np.abs(m), initial=0.0))


@dataclass
class CasimirSplit:
    """rough = -Σπ_*(X_i)², potential = Σπ_*(Y_j)²; rough is None on a 𝔨-representation"""
    rough: Optional[np.ndarray]
    potential: np.ndarray

    @property
    def total(self):
        if self.rough is None:
            raise PreconditionError("A 𝔨-representation has no rough part")
        return self.rough + self.potential


def casimir_split(split, rep):
    V = sum((m @ m for m in (rep.of_k(j) for j in range(split.k_dim))),
            np.zeros((rep.dimension, rep.dimension), dtype=rep.matrices[0].dtype))
    if rep.domain == "k":
        return CasimirSplit(None, V)
    rough = -sum((m @ m for m in (rep.of_p(i) for i in range(split.p_dim))),
                 np.zeros_like(V))
    return CasimirSplit(rough, V)


def full_casimir(split, rep):
    """Δ_π = -Σ b^{ij} π_*(Z_i)π_*(Z_j) with b^{ij} the inverse Killing form"""
    if rep.domain != "g":
        raise PreconditionError("The full Casimir needs π_* on all of 𝔤")
    inverse = np.linalg.inv(split.killing)
    n = split.algebra.dimension
    out = np.zeros((rep.dimension, rep.dimension), dtype=rep.matrices[0].dtype)
    for i in range(n):
        for j in range(n):
            if inverse[i, j] != 0.0:
                out -= inverse[i, j] * (rep.matrices[i] @ rep.matrices[j])
    return out


def commutator_defect(rep, operator):
    """max_i ‖[operator, π_*(Z_i)]‖ over the defining matrices of rep"""
    return max((_max_abs(operator @ m - m @ operator) for m in rep.matrices), default=0.0)


def split_consistency_defect(split, rep):
    return _max_abs(casimir_split(split, rep).total - full_casimir(split, rep))


def wedge_operator(a, b, killing):
    """(a ∧ b)(c) = B(a, c)b - B(b, c)a as a matrix on 𝔤"""
    return np.outer(b, killing @ a) - np.outer(a, killing @ b)


def kp_identity_defect(split, y, x):
    """‖2[Y, X] - Σ_i (X_i ∧ [Y, X_i])(X)‖ for Y ∈ 𝔨, X ∈ 𝔭"""
    if not split.in_k(y) or not split.in_p(x):
        raise PreconditionError("kp identity needs Y ∈ 𝔨 and X ∈ 𝔭")
    alg = split.algebra
    rhs = np.zeros(alg.dimension)
    for i in range(split.p_dim):
        Xi = split.X(i)
        rhs += wedge_operator(Xi, alg.bracket(y, Xi), split.killing) @ x
    return _max_abs(2.0 * alg.bracket(y, x) - rhs)


@dataclass
class PotentialComparison:
    degree: int
    potential: np.ndarray
    curvature_potential: np.ndarray

    @property
    def defect(self):
        return _max_abs(self.potential - self.curvature_potential)

    def passed(self, tol=1e-10):
        return self.defect <= tol

    def to_json(self):
        return {'degree': self.degree, 'defect': self.defect,
                'potential': np.real(self.potential).tolist()}


def potential_via_curvature(split, k, rep=None, tol=1e-10):
    """
    V' = ½ Σ_{i,l} Λ^k(X_i ∧ X_l) Λ^k(R(X_i, X_l)) on Λ^k𝔭, compared with
    V = Σ_j π_*(Y_j)² from the Casimir split.

    Raises:
        PreconditionError: rep does not act on 𝔨 through Λ^k of the isotropy action
    """
    isotropy = isotropy_representation(split, k)
    if rep is not None:
        for j in range(split.k_dim):
            own = rep.of_k(j)
            if own.shape != isotropy.matrices[j].shape or _max_abs(own - isotropy.matrices[j]) > tol:
                raise PreconditionError(f"Representation {rep.name} is not Λ^{k} of the isotropy action")
    else:
        rep = isotropy

    alg = split.algebra
    p = split.p_dim
    curvature_potential = np.zeros((rep.dimension, rep.dimension))
    for i in range(p):
        for l in range(p):
            if i == l:
                continue
            e_i, e_l = np.eye(p)[i], np.eye(p)[l]
            wedge = np.outer(e_l, e_i) - np.outer(e_i, e_l)
            # R(X_i, X_l) = -ad([X_i, X_l]) restricted to 𝔭
            curvature = -isotropy_matrix(split, alg.bracket(split.X(i), split.X(l)))
            curvature_potential = curvature_potential + 0.5 * (
                exterior_power_action(wedge, k) @ exterior_power_action(curvature, k))
    result = PotentialComparison(k, casimir_split(split, rep).potential, curvature_potential)
    logger.debug(f"Curvature potential on Λ^{k}𝔭 of {alg.name}: defect {result.defect:.3e}")
    return result


@dataclass
class SymbolReport:
    skew: bool
    commutes: bool
    elliptic: bool
    min_singular: float
    violations: List[str] = field(default_factory=list)

    @property
    def passed(self):
        return self.skew and self.commutes and self.elliptic

    def to_json(self):
        return {'skew': self.skew, 'commutes': self.commutes, 'elliptic': self.elliptic,
                'min_singular': self.min_singular, 'violations': self.violations}


def symbol_compat_check(split, rep, sigma0, times=(0.3, 1.0, 2.5), directions=64, tol=1e-8):
    """
    Check σ0(X)π(k) = π(k)σ0(X) for k = exp(tY_j) and invertibility of σ0 on the
    unit sphere of 𝔭 (sampled on a circle in each coordinate plane).

    Args:
        sigma0: matrices σ0(X_i) for the X basis of 𝔭

    Raises:
        PreconditionError: some σ0(X_i) is not skew on E_0
    """
    sigma0 = [np.atleast_2d(np.asarray(s)) for s in sigma0]
    if len(sigma0) != split.p_dim:
        raise PreconditionError(f"σ0 needs {split.p_dim} matrices, got {len(sigma0)}")
    for i, s in enumerate(sigma0):
        if not rep.is_skew(s):
            raise PreconditionError(f"σ0(X_{i}) is not skew on E_0")

    violations = []
    for j in range(split.k_dim):
        generator = rep.of_k(j)
        for t in times:
            group = expm(t * generator)
            for i, s in enumerate(sigma0):
                if _max_abs(s @ group - group @ s) > tol:
                    violations.append(f"σ0(X_{i}) does not commute with exp({t}·Y_{j})")
    commutes = not violations

    angles = np.linspace(0.0, 2.0 * np.pi, directions, endpoint=False)
    if split.p_dim == 1:
        samples = [sigma0[0]]
    else:
        samples = [np.cos(phi) * sigma0[a] + np.sin(phi) * sigma0[b]
                   for a in range(split.p_dim) for b in range(a + 1, split.p_dim) for phi in angles]
    min_singular = min(float(np.linalg.svd(m, compute_uv=False)[-1]) for m in samples)
    elliptic = bool(min_singular > tol)
    if not elliptic:
        violations.append(f"σ0 degenerates on the unit sphere (min singular value {min_singular:.3e})")
    return SymbolReport(True, commutes, elliptic, float(min_singular), violations)


def _curve_value(coefficients, t):
    return sum(c * t ** m for m, c in enumerate(coefficients))


def covariant_derivative_rule(split, rep, z, coefficients):
    """
    ∇_Z of the equivariant section represented by the polynomial curve
    u(t) = Σ c_m t^m in E_0: u'(0) + π_*(z_𝔨)u(0).
    """
    coefficients = [np.asarray(c) for c in coefficients]
    u0 = coefficients[0]
    du0 = coefficients[1] if len(coefficients) > 1 else np.zeros_like(u0)
    return du0 + rep.of(split.k_part(np.asarray(z, dtype=float))) @ u0


def transport_oracle(split, rep, z, coefficients, h=1e-5):
    """
    Covariant derivative of [exp(tZ), u(t)] at t = 0 by central differences.

    Ad(exp tZ) = Ad(p(t))Ad(k(t)) is the polar decomposition for B_θ, with
    p(t) in exp 𝔭 and k(t) in K, so [exp tZ, u(t)] = [p(t), π(k(t))u(t)].
    For fixed v the section [exp(sY), v] is parallel along each geodesic
    exp(sY)x0, so only π(k(t))u(t) is differentiated.
    """
    alg = split.algebra
    coefficients = [np.asarray(c) for c in coefficients]
    metric = -split.killing @ alg.theta
    lower = cholesky(0.5 * (metric + metric.T), lower=True)
    to_frame, from_frame = lower.T, np.linalg.inv(lower.T)
    generator = alg.ad(np.asarray(z, dtype=float))
    k_span = np.stack([alg.ad(split.Y(j)).ravel() for j in range(split.k_dim)], axis=1)

    def rotated(t):
        orthogonal, _ = polar(to_frame @ expm(t * generator) @ from_frame, side='left')
        rotation = from_frame @ orthogonal @ to_frame
        weights = np.linalg.lstsq(k_span, np.real(logm(rotation)).ravel(), rcond=None)[0]
        action = sum((w * rep.of_k(j) for j, w in enumerate(weights)),
                     np.zeros((rep.dimension, rep.dimension), dtype=rep.matrices[0].dtype))
        return expm(action) @ _curve_value(coefficients, t)

    return (rotated(h) - rotated(-h)) / (2.0 * h)
