"""
Spectrum Descriptors

A spectrum is stored as sorted disjoint closed intervals (the upper end may be
+∞, the lower end -∞) together with finitely many isolated points.
"""

import math
from dataclasses import dataclass, field
from typing import List, Tuple

from ..core.errors import DomainError


def _format_number(value):
    if math.isinf(value):
        return "∞" if value > 0 else "-∞"
    return f"{value:g}"


@dataclass(frozen=True)
class SpectrumDescriptor:
    """Finite union of closed intervals plus isolated points"""
    intervals: Tuple[Tuple[float, float], ...] = ()
    points: Tuple[float, ...] = ()

    def __post_init__(self):
        ordered = tuple(sorted((float(lo), float(hi)) for lo, hi in self.intervals))
        for lo, hi in ordered:
            if lo > hi:
                raise DomainError(f"Interval [{lo}, {hi}] is empty")
        for (_, hi), (lo, _) in zip(ordered, ordered[1:]):
            if lo <= hi:
                raise DomainError("Spectrum intervals must be disjoint")
        pts = tuple(sorted(set(float(p) for p in self.points)))
        for p in pts:
            if any(lo < p < hi for lo, hi in ordered):
                raise DomainError(f"Isolated point {p} lies inside an interval")
        object.__setattr__(self, 'intervals', ordered)
        object.__setattr__(self, 'points', pts)

    @classmethod
    def half_line(cls, bottom, points=()):
        return cls(((bottom, math.inf),), tuple(points))

    @classmethod
    def real_line(cls):
        return cls(((-math.inf, math.inf),))

    @classmethod
    def empty(cls):
        return cls()

    @property
    def is_empty(self):
        return not self.intervals and not self.points

    @property
    def bottom(self):
        """Infimum of the spectrum (None when empty)"""
        candidates = [lo for lo, _ in self.intervals] + list(self.points)
        return min(candidates) if candidates else None

    @property
    def half_line_bottom(self):
        """Lower end of the unbounded interval, if any"""
        for lo, hi in self.intervals:
            if math.isinf(hi):
                return lo
        return None

    def contains(self, value, tol=0.0):
        if any(abs(value - p) <= tol for p in self.points):
            return True
        return any(lo - tol <= value <= hi + tol for lo, hi in self.intervals)

    def __str__(self):
        if self.is_empty:
            return "∅"
        parts = ["{" + ", ".join(_format_number(p) for p in self.points) + "}"] if self.points else []
        for lo, hi in self.intervals:
            if math.isinf(lo) and math.isinf(hi):
                parts.append("ℝ")
                continue
            left = "(" if math.isinf(lo) else "["
            right = ")" if math.isinf(hi) else "]"
            parts.append(f"{left}{_format_number(lo)}, {_format_number(hi)}{right}")
        return "∪".join(parts)

    def to_json(self):
        return {"intervals": [[lo, hi] for lo, hi in self.intervals],
                "points": list(self.points),
                "text": str(self)}
