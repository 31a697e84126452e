"""
Riccati Solver

Integrates the shape-operator equation S' + S² = K along a geodesic and
compares the result with the constant-curvature model solutions.

Each step propagates the linear Jacobi system Y'' = K Y from (Y, Y') = (I, S)
with the classical 4th-order Runge-Kutta scheme and recovers S = Y' Y⁻¹.
The linear system is not stiff even where S is large near a singular start.
"""

import logging
import math
from dataclasses import dataclass

import numpy as np

from ..config.defaults import setting
from ..core.errors import DomainError, FiniteEscapeError, PreconditionError
from .profiles import OperatorPath, make_grid

logger = logging.getLogger(__name__)


def model_shape_operator(kappa, curvature, t, p_flag=False):
    """
    Shape operator of the model solution in constant curvature -curvature².

    ker-P directions start at S(0) = κ; im-P directions start singular like 1/t.
    """
    a = float(curvature)
    if not a > 0:
        raise DomainError(f"Curvature rate must be positive, got {a}")
    if p_flag:
        if not t > 0:
            raise DomainError(f"Singular model solution needs t > 0, got t={t}")
        return a / math.tanh(a * t)
    if kappa < 0:
        raise DomainError(f"κ must be non-negative, got {kappa}")
    if t < 0:
        raise DomainError(f"t must be non-negative, got {t}")
    th = math.tanh(a * t)
    return a * (th + kappa / a) / (1.0 + kappa * th / a)


def _joint_eigenbasis(init):
    """Eigenbasis of Q0 adapted to the splitting im P ⊕ ker P"""
    shift = 1.0 + 2.0 * np.max(np.abs(init.Q0), initial=0.0) * init.dimension
    eigs, vectors = np.linalg.eigh(init.Q0 + shift * init.P)
    singular = eigs > shift / 2.0
    return eigs, vectors, singular


def model_shape_matrix(init, curvature, t):
    """S_a(t) by functional calculus on (P, Q0)"""
    eigs, vectors, singular = _joint_eigenbasis(init)
    values = [model_shape_operator(0.0, curvature, t, p_flag=True) if flag
              else model_shape_operator(max(mu, 0.0), curvature, t)
              for mu, flag in zip(eigs, singular)]
    return vectors @ np.diag(values) @ vectors.T


def singular_start(init, K0, t0):
    """S(t0) from the expansion S = P/t + Q0 + t C of a singular start"""
    P, Q0 = init.P, init.Q0
    I = np.eye(init.dimension)
    N = I - P
    correction = P @ K0 @ P / 3.0 + N @ (K0 - Q0 @ Q0) @ N + 0.5 * (P @ K0 @ N + N @ K0 @ P)
    return P / t0 + Q0 + t0 * correction


def _jacobi_step(profile, t, h, Y, Z):
    """One RK4 step of Y' = Z, Z' = K(t) Y"""
    K1 = profile(t)
    Kh = profile(t + 0.5 * h)
    K2 = profile(t + h)
    k1y, k1z = Z, K1 @ Y
    k2y, k2z = Z + 0.5 * h * k1z, Kh @ (Y + 0.5 * h * k1y)
    k3y, k3z = Z + 0.5 * h * k2z, Kh @ (Y + 0.5 * h * k2y)
    k4y, k4z = Z + h * k3z, K2 @ (Y + h * k3y)
    Y_next = Y + h / 6.0 * (k1y + 2 * k2y + 2 * k3y + k4y)
    Z_next = Z + h / 6.0 * (k1z + 2 * k2z + 2 * k3z + k4z)
    return Y_next, Z_next


def riccati_solve(profile, init, T, h, t0=None, blowup=None):
    """
    Integrate S' + S² = K on (0, T].

    Args:
        profile: CurvatureProfile
        init: RiccatiInit; when P != 0 integration starts at t0
        T: end of the interval
        h: maximal step
        t0: singular start time (defaults to the riccati_t0 setting)
        blowup: norm threshold for finite escape (defaults to blowup_threshold)

    Returns:
        OperatorPath of S

    Raises:
        FiniteEscapeError: S leaves every bounded set before T
    """
    if init.dimension != profile.dimension:
        raise DomainError(f"Init has dimension {init.dimension}, profile {profile.dimension}")
    t0 = setting('riccati_t0') if t0 is None else t0
    blowup = setting('blowup_threshold') if blowup is None else blowup

    if init.singular:
        grid, step = make_grid(t0, T, h)
        S = singular_start(init, profile(t0), t0)
    else:
        grid, step = make_grid(0.0, T, h)
        S = init.Q0.copy()

    n = init.dimension
    identity = np.eye(n)
    values = np.empty((len(grid), n, n))
    values[0] = S
    for k in range(len(grid) - 1):
        t = grid[k]
        Y, Z = _jacobi_step(profile, t, step, identity, S)
        det = np.linalg.det(Y)
        if det <= 0.0:
            # Y became singular inside the step: a focal point
            escape = t + step / (1.0 - det)
            logger.info(f"Riccati solution escaped near t={escape:.6f}")
            raise FiniteEscapeError(f"Riccati solution blows up near t={escape:.6f}", escape)
        S = np.linalg.solve(Y.T, Z.T).T
        S = 0.5 * (S + S.T)
        if np.linalg.norm(S, 2) > blowup:
            raise FiniteEscapeError(f"Riccati solution exceeded {blowup:g} at t={grid[k + 1]:.6f}",
                                    grid[k + 1])
        values[k + 1] = S

    metadata = {'a': profile.a, 'b': profile.b, 'h': step, 'init': init.fingerprint(),
                'profile': profile.name}
    return OperatorPath(grid, values, step, kind="S", metadata=metadata)


@dataclass
class ComparisonMargins:
    """Worst eigen-margins of S - S_a and S_b - S over a path"""
    lower: float
    upper: float
    lower_at: float
    upper_at: float
    slack: float = 1e-6

    @property
    def passed(self):
        return self.lower >= -self.slack and self.upper >= -self.slack

    def to_json(self):
        return {'lower': self.lower, 'upper': self.upper, 'lower_at': self.lower_at,
                'upper_at': self.upper_at, 'passed': self.passed}


def comparison_margins(path, init, a, b, slack=1e-6):
    """Check S_a <= S <= S_b at every node of a Riccati path"""
    if not init.is_nonnegative():
        raise PreconditionError("Comparison margins need Q0 >= 0")
    lower, upper = math.inf, math.inf
    lower_at = upper_at = float(path.t[0])
    for t, S in zip(path.t, path.values):
        if t <= 0.0 and init.singular:
            continue
        low = float(np.linalg.eigvalsh(S - model_shape_matrix(init, a, t))[0])
        up = float(np.linalg.eigvalsh(model_shape_matrix(init, b, t) - S)[0])
        if low < lower:
            lower, lower_at = low, float(t)
        if up < upper:
            upper, upper_at = up, float(t)
    return ComparisonMargins(lower, upper, lower_at, upper_at, slack)


def fund_form_envelope(kappa_minus, kappa_plus, a, b, t):
    """
    Envelope (j₋'/j₋, j₊'/j₊) for the second fundamental form of {f = t}.

    j₋ = cosh(at) + κ₋ sinh(at)/a and j₊ = cosh(bt) + κ₊ sinh(bt)/b.
    """
    if not 0 < kappa_minus <= kappa_plus:
        raise DomainError(f"Need 0 < κ₋ <= κ₊, got {kappa_minus}, {kappa_plus}")
    if t < 0:
        raise DomainError(f"t must be non-negative, got {t}")
    return model_shape_operator(kappa_minus, a, t), model_shape_operator(kappa_plus, b, t)


def scalar_envelope(alpha, beta, a, b, t):
    """Envelope for a scalar start α <= Q(0) <= β; α = 0 is allowed"""
    if not 0 <= alpha <= beta:
        raise DomainError(f"Need 0 <= α <= β, got {alpha}, {beta}")
    return model_shape_operator(alpha, a, t), model_shape_operator(beta, b, t)
