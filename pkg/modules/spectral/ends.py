"""
Warped Ends

Model ends [0, T] × S¹ with metric dt² + f(t)²dθ² and the unitary reduction
u ↦ f^{1/2}u of the n-th Fourier mode of Δ₀ to -d²/dt² + W(t),
W = ¼(f'/f)² + ½(f'/f)' + n²/f².
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from ..config.defaults import setting
from ..core.errors import DomainError, GridError, ScopeError
from .schrodinger import Schrodinger1D

logger = logging.getLogger(__name__)


@dataclass
class WarpedEnd:
    """Warp f with analytic f'/f and (f'/f)'; two-sided ends live on [-T, T]"""
    kind: str
    mode: int
    warp: Callable
    log_derivative: Callable
    log_derivative_prime: Callable
    two_sided: bool = False

    @property
    def infinite_volume(self):
        return self.kind in ("funnel", "cylinder")

    def potential(self, t):
        t = np.asarray(t, dtype=float)
        f = self.warp(t)
        if np.any(f <= 0.0):
            raise DomainError(f"Warp of the {self.kind} end vanishes on the grid")
        q = self.log_derivative(t)
        return 0.25 * q ** 2 + 0.5 * self.log_derivative_prime(t) + self.mode ** 2 / f ** 2

    def asymptotic_threshold(self):
        """lim inf W at the far end of the channel"""
        if self.kind in ("funnel", "cylinder"):
            return 0.25
        if self.kind == "cusp":
            return 0.25 if self.mode == 0 else math.inf
        raise ScopeError(f"No closed-form threshold for end type {self.kind}")

    def label(self):
        return f"{self.kind}[n={self.mode}]"


def funnel_end(mode=0):
    return WarpedEnd("funnel", int(mode), np.cosh, np.tanh, lambda t: 1.0 / np.cosh(t) ** 2)


def cusp_end(mode=0):
    return WarpedEnd("cusp", int(mode), lambda t: np.exp(-t), lambda t: -np.ones_like(t),
                     lambda t: np.zeros_like(t))


def cylinder_end(mode=0):
    """The hyperbolic cylinder: both halves of cosh t, glued along the closed geodesic"""
    return WarpedEnd("cylinder", int(mode), np.cosh, np.tanh, lambda t: 1.0 / np.cosh(t) ** 2,
                     two_sided=True)


END_TYPES = {
    "funnel": funnel_end,
    "cusp": cusp_end,
    "cylinder": cylinder_end,
}


def make_end(kind, mode=0):
    try:
        return END_TYPES[kind](mode)
    except KeyError:
        raise ScopeError(f"Unknown end type '{kind}'; expected one of {sorted(END_TYPES)}") from None


def warp_consistency(end, length, h):
    """max |analytic (f'/f, (f'/f)') - central differences| on the end, O(h²)"""
    t = np.arange(h, length, h)
    logf = lambda s: np.log(end.warp(s))
    fd = (logf(t + h) - logf(t - h)) / (2.0 * h)
    fd2 = (end.log_derivative(t + h) - end.log_derivative(t - h)) / (2.0 * h)
    return max(float(np.max(np.abs(fd - end.log_derivative(t)))),
               float(np.max(np.abs(fd2 - end.log_derivative_prime(t)))))


def radial_reduce(end, length, h, cap=None):
    """
    Dirichlet operator -d²/dt² + W on [0, T] (or [-T, T] for a two-sided end).

    Nodes where W exceeds the cap are dropped from the far end; the ground
    state is negligible there.

    Raises:
        GridError: the length is not positive or h does not divide it
        DomainError: the warp vanishes on the grid
    """
    if not length > 0 or not h > 0:
        raise GridError(f"Need T > 0 and h > 0, got T={length}, h={h}")
    steps = int(round(length / h))
    if abs(steps * h - length) > 1e-9 * length:
        raise GridError(f"Step {h} does not divide the length {length}")
    cap = setting('potential_cap') if cap is None else cap
    start = -length if end.two_sided else 0.0
    count = 2 * steps if end.two_sided else steps
    t = start + h * np.arange(1, count)
    W = end.potential(t)
    over = np.nonzero(W > cap)[0]
    if len(over):
        keep = over[0]
        logger.debug(f"{end.label()}: potential exceeds {cap:g} at t={t[keep]:.3f}, truncating grid")
        t, W = t[:keep], W[:keep]
    return Schrodinger1D(float(start), float(t[-1] + h) if len(t) else float(start + h), W, h)
