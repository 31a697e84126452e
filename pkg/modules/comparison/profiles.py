"""
Curvature Profiles and Operator Paths

A CurvatureProfile is the curvature operator along a unit-speed geodesic,
t ↦ K(t), acting on the normal space. K(t) is the curvature magnitude: its
spectrum lies in [a², b²] when the sectional curvatures lie in [-b², -a²].
Jacobi fields then solve J'' = K J and shape operators solve S' + S² = K.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Callable, Dict, Optional

import numpy as np
from scipy.linalg import expm

from ..core.errors import DomainError, GridError, PreconditionError
from ..core.utilities import atomic_write_csv, matrix_hash

logger = logging.getLogger(__name__)


@dataclass
class CurvatureProfile:
    """Curvature operator along a geodesic with pinching constants a <= b"""
    dimension: int
    operator: Callable[[float], np.ndarray]
    a: float
    b: float
    derivative_bound: Optional[float] = None
    t_max: float = math.inf
    name: str = "profile"

    def __post_init__(self):
        if not 0 < self.a <= self.b:
            raise DomainError(f"Pinching constants need 0 < a <= b, got a={self.a}, b={self.b}")
        if self.dimension < 1:
            raise DomainError(f"Dimension must be positive, got {self.dimension}")

    def __call__(self, t):
        return np.asarray(self.operator(t), dtype=float).reshape(self.dimension, self.dimension)

    def check_pinching(self, ts, tol=1e-12):
        """Sample eigenvalues and confirm they lie in [a², b²]"""
        for t in ts:
            eigs = np.linalg.eigvalsh(self(t))
            if eigs[0] < self.a ** 2 - tol or eigs[-1] > self.b ** 2 + tol:
                logger.debug(f"Pinching violated at t={t}: eigenvalues {eigs}")
                return False
        return True


def constant_profile(dimension, curvature):
    """K ≡ curvature² Id"""
    value = curvature ** 2
    return CurvatureProfile(dimension, lambda t: value * np.eye(dimension), curvature, curvature,
                            derivative_bound=0.0, name=f"constant({curvature:g})")


def sinusoidal_profile(dimension=1):
    """K(t) = (1 + 0.5 sin t)² Id, pinched by (1, 1.5) for t in [0, π]"""
    return CurvatureProfile(dimension, lambda t: (1.0 + 0.5 * math.sin(t)) ** 2 * np.eye(dimension),
                            1.0, 1.5, t_max=math.pi, name="sinusoidal")


def random_profile(dimension, rng, a=1.0, b=1.5):
    """
    Randomized pinched profile with a rotating eigenframe.

    K(t) = U(t) diag(λ_i(t)) U(t)ᵀ with U(t) = exp(tA), A skew, and
    λ_i(t) = a² + (b² - a²)(1 + sin(ω_i t + φ_i))/2.
    """
    skew = rng.normal(size=(dimension, dimension))
    skew = 0.5 * (skew - skew.T)
    omegas = rng.uniform(0.2, 2.0, size=dimension)
    phases = rng.uniform(0.0, 2.0 * math.pi, size=dimension)
    spread = b ** 2 - a ** 2

    def operator(t):
        frame = expm(t * skew)
        eigs = a ** 2 + spread * 0.5 * (1.0 + np.sin(omegas * t + phases))
        return frame @ np.diag(eigs) @ frame.T

    return CurvatureProfile(dimension, operator, a, b, name="random")


@dataclass
class RiccatiInit:
    """Initial data (P, Q(0)) for the shape operator of a distance function"""
    P: np.ndarray
    Q0: np.ndarray
    convex: bool = False

    def __post_init__(self):
        self.P = np.atleast_2d(np.asarray(self.P, dtype=float))
        self.Q0 = np.atleast_2d(np.asarray(self.Q0, dtype=float))
        if self.P.shape != self.Q0.shape or self.P.shape[0] != self.P.shape[1]:
            raise DomainError("P and Q0 must be square matrices of the same size")
        if np.max(np.abs(self.P @ self.P - self.P)) > 1e-10 or np.max(np.abs(self.P - self.P.T)) > 1e-10:
            raise DomainError("P must be an orthogonal projection")
        if np.max(np.abs(self.Q0 - self.Q0.T)) > 1e-10:
            raise DomainError("Q0 must be symmetric")
        if np.linalg.norm(self.Q0 @ self.P, 2) > 1e-12:
            raise DomainError("Q0 must vanish on the image of P")
        if self.convex and not self.is_nonnegative():
            raise PreconditionError("Q0 must be positive semidefinite for a convex initial set")

    @property
    def dimension(self):
        return self.P.shape[0]

    @property
    def singular(self):
        return bool(np.any(np.abs(self.P) > 0.0))

    def is_nonnegative(self, tol=1e-12):
        return bool(np.linalg.eigvalsh(self.Q0)[0] >= -tol)

    @classmethod
    def regular(cls, Q0, convex=False):
        Q0 = np.atleast_2d(np.asarray(Q0, dtype=float))
        return cls(np.zeros_like(Q0), Q0, convex)

    @classmethod
    def random(cls, rng, dimension, max_rank=1, spread=2.0):
        """Random convex data: rank P <= max_rank and Q0 >= 0 vanishing on the image of P"""
        frame, _ = np.linalg.qr(rng.normal(size=(dimension, dimension)))
        rank = int(rng.integers(0, max_rank + 1))
        p_diag = np.zeros(dimension)
        p_diag[:rank] = 1.0
        q_diag = rng.uniform(0.0, spread, size=dimension)
        q_diag[:rank] = 0.0
        P = frame @ np.diag(p_diag) @ frame.T
        P = 0.5 * (P + P.T)
        complement = np.eye(dimension) - P
        Q0 = complement @ (frame @ np.diag(q_diag) @ frame.T) @ complement
        return cls(P, 0.5 * (Q0 + Q0.T), convex=True)

    def fingerprint(self):
        return matrix_hash(self.P, self.Q0)


@dataclass
class OperatorPath:
    """Values of S, J or K on a grid, optionally with derivatives"""
    t: np.ndarray
    values: np.ndarray
    h: float
    kind: str = "S"
    derivative: Optional[np.ndarray] = None
    metadata: Dict[str, object] = field(default_factory=dict)

    def __len__(self):
        return len(self.t)

    def symmetry_defect(self):
        if self.values.ndim != 3:
            return 0.0
        return float(np.max(np.abs(self.values - np.transpose(self.values, (0, 2, 1)))))

    def at(self, t):
        """Value at the grid node closest to t"""
        index = int(np.argmin(np.abs(self.t - t)))
        return self.values[index]

    def to_csv(self, path):
        flat = self.values.reshape(len(self.t), -1)
        if self.values.ndim == 3:
            n = self.values.shape[1]
            columns = [f"{self.kind}_{i}{j}" for i in range(n) for j in range(n)]
        else:
            columns = [f"{self.kind}_{i}" for i in range(flat.shape[1])]
        rows = [[t] + list(row) for t, row in zip(self.t, flat)]
        comments = dict(self.metadata)
        comments['h'] = self.h
        atomic_write_csv(path, ["t"] + columns, rows, comments=comments)


def make_grid(start, stop, h):
    """Uniform grid from start to stop with step at most h"""
    if not h > 0:
        raise GridError(f"Step size must be positive, got {h}")
    if not stop > start:
        raise GridError(f"Grid end {stop} must exceed start {start}")
    steps = int(math.ceil((stop - start) / h - 1e-12))
    return np.linspace(start, stop, steps + 1), (stop - start) / steps


def convergence_order(errors, hs):
    """Least-squares slope of log(error) against log(h)"""
    errors = np.asarray(errors, dtype=float)
    hs = np.asarray(hs, dtype=float)
    if len(errors) < 2 or np.any(errors <= 0):
        return math.nan
    slope, _ = np.polyfit(np.log(hs), np.log(errors), 1)
    return float(slope)
