"""
Essential Spectrum Bottoms

Dirichlet bottoms λ₀(T) on truncated ends, extrapolated in 1/T, and the
surface-level estimate as the minimum over the ends.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

import numpy as np

from ..config.defaults import setting
from ..core.errors import GridError, ScopeError
from ..spectra.tables import delta0, mckean_bound
from .ends import make_end, radial_reduce
from .schrodinger import eigen_bottom

logger = logging.getLogger(__name__)


@dataclass
class SpectrumReport:
    label: str
    lengths: List[float]
    bottoms: List[float]
    extrapolated: float
    persson: float
    target: Optional[float] = None
    agreement: float = 1e-2
    slack: float = 1e-9

    @property
    def monotone(self):
        """Dirichlet bracketing: λ₀ never increases with T"""
        return all(b <= a + self.slack for a, b in zip(self.bottoms, self.bottoms[1:]))

    @property
    def inconclusive(self):
        """The extrapolation and the tail infimum of W disagree"""
        return not math.isinf(self.persson) and abs(self.extrapolated - self.persson) > self.agreement

    def error(self):
        return None if self.target is None else abs(self.extrapolated - self.target)

    def to_json(self):
        return {'label': self.label, 'lengths': self.lengths, 'bottoms': self.bottoms,
                'extrapolated': self.extrapolated, 'persson': self.persson, 'target': self.target,
                'monotone': self.monotone, 'inconclusive': self.inconclusive}

    def rows(self):
        return list(zip(self.lengths, self.bottoms))


def extrapolate(lengths, values):
    """Least-squares fit of λ₀(T) in {1, T⁻², T⁻³, T⁻⁴}; returns the constant term"""
    lengths = np.asarray(lengths, dtype=float)
    columns = [np.ones_like(lengths), lengths ** -2, lengths ** -3, lengths ** -4][:max(2, min(4, len(lengths) - 1))]
    coefficients, *_ = np.linalg.lstsq(np.column_stack(columns), np.asarray(values, dtype=float), rcond=None)
    return float(coefficients[0])


def persson_bound(end, lengths, h):
    """min of W over the outer half of the longest truncation"""
    op = radial_reduce(end, max(lengths), h)
    t = op.nodes
    tail = op.potential[np.abs(t) >= 0.5 * max(lengths)]
    return float(np.min(tail)) if len(tail) else math.inf


def ess_bottom(end, lengths: Sequence[float], h=0.05, target=None):
    """
    λ₀ on [0, T_j] and its extrapolation to T = ∞.

    Raises:
        GridError: fewer than three lengths or lengths not increasing
    """
    if isinstance(end, str):
        end = make_end(end)
    lengths = [float(T) for T in lengths]
    if len(lengths) < 3 or any(b <= a for a, b in zip(lengths, lengths[1:])):
        raise GridError("Need at least three increasing truncation lengths")
    bottoms = [eigen_bottom(radial_reduce(end, T, h)) for T in lengths]
    extrapolated = extrapolate(lengths, bottoms)
    if end.asymptotic_threshold() == math.inf:
        # a confining channel has no essential spectrum to extrapolate to
        extrapolated = bottoms[-1]
    report = SpectrumReport(end.label(), lengths, bottoms, extrapolated, persson_bound(end, lengths, h),
                            target, setting('persson_agreement'))
    logger.info(f"{end.label()}: λ₀(T) = {['%.6f' % b for b in bottoms]}, extrapolated {extrapolated:.6f}")
    return report


@dataclass
class RefinementStudy:
    steps: List[float]
    bottoms: List[float]

    @property
    def ratios(self):
        """|λ(h) - λ(h/2)| / |λ(h/2) - λ(h/4)|, ≈ 4 for a second-order stencil"""
        diffs = [abs(a - b) for a, b in zip(self.bottoms, self.bottoms[1:])]
        return [a / b if b > 0 else math.inf for a, b in zip(diffs, diffs[1:])]

    def to_json(self):
        return {'steps': self.steps, 'bottoms': self.bottoms, 'ratios': self.ratios}


def refinement_study(end, length, h=0.1, levels=4):
    steps = [h / 2 ** j for j in range(levels)]
    return RefinementStudy(steps, [eigen_bottom(radial_reduce(end, length, s)) for s in steps])


def channel_bottoms(kind, modes, length, h=0.05):
    """λ₀ of the first few Fourier modes; non-decreasing in |n|"""
    return [eigen_bottom(radial_reduce(make_end(kind, n), length, h)) for n in modes]


def cross_check(report, tol=1e-3):
    """Agreement of a hyperbolic-plane end with δ₀(2, 1) and the McKean bound"""
    return {'delta0': delta0(2, 1), 'mckean': mckean_bound(2, 1.0),
            'agrees': abs(report.extrapolated - delta0(2, 1)) <= tol
            and abs(report.extrapolated - mckean_bound(2, 1.0)) <= tol}


@dataclass
class SurfaceDescriptor:
    """Ends of a geometrically finite surface; the compact core only closes the Dirichlet problem"""
    ends: List[str]
    name: str = "surface"
    modes: List[int] = field(default_factory=list)

    def build(self):
        modes = self.modes or [0] * len(self.ends)
        if len(modes) != len(self.ends):
            raise ScopeError("One Fourier mode per end is required")
        return [make_end(kind, n) for kind, n in zip(self.ends, modes)]

    @property
    def infinite_volume(self):
        return any(kind in ("funnel", "cylinder") for kind in self.ends)

    @classmethod
    def from_json(cls, data):
        return cls(list(data['ends']), data.get('name', 'surface'), list(data.get('modes', [])))


@dataclass
class SurfaceReport:
    descriptor: SurfaceDescriptor
    ends: List[SpectrumReport]
    tolerance: float = 1e-3

    @property
    def estimate(self):
        return min(r.extrapolated for r in self.ends)

    @property
    def passed(self):
        """Equality with ¼ for infinite volume; ≥ ¼ up to tolerance otherwise"""
        if self.descriptor.infinite_volume:
            return abs(self.estimate - 0.25) <= self.tolerance
        return self.estimate >= 0.25 - self.tolerance

    def to_json(self):
        return {'name': self.descriptor.name, 'ends': [r.to_json() for r in self.ends],
                'estimate': self.estimate, 'infinite_volume': self.descriptor.infinite_volume,
                'passed': self.passed}


def surface_experiment(descriptor, lengths=(20.0, 40.0, 80.0, 160.0), h=0.05):
    """
    Raises:
        ScopeError: unknown end type
    """
    if not isinstance(descriptor, SurfaceDescriptor):
        descriptor = SurfaceDescriptor(list(descriptor))
    ends = descriptor.build()
    reports = [ess_bottom(end, lengths, h, target=0.25) for end in ends]
    report = SurfaceReport(descriptor, reports)
    logger.info(f"Surface {descriptor.name}: essential bottom estimate {report.estimate:.6f}")
    return report
