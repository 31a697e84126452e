"""
Group Presentations

Finitely generated groups of isometries given by generator lists. Provides
word-ball enumeration, thin-part membership for elementary groups and a
limit set sampled from the directions of orbit points.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np

from ..config.defaults import setting
from ..core.errors import DomainError, ScopeError
from .isometry import (
    IdealPoint,
    Isometry,
    IsometryClass,
    angular_gap,
    check_interior,
    classify,
    displacement,
)

logger = logging.getLogger(__name__)


@dataclass
class GroupPresentation:
    """Generators of a group of isometries plus a default word-ball depth"""
    generators: List[Isometry] = field(default_factory=list)
    depth: int = 6

    def __post_init__(self):
        for index, g in enumerate(self.generators):
            if g.is_identity():
                raise DomainError(f"Generator {index} is the identity")

    def conjugate_by(self, h):
        return GroupPresentation([g.conjugate_by(h) for g in self.generators], self.depth)

    def is_abelian(self, tol=1e-9):
        for i, g in enumerate(self.generators):
            for h in self.generators[i + 1:]:
                if not (g @ h @ g.inverse() @ h.inverse()).is_identity(tol):
                    return False
        return True

    def to_json(self):
        return {"generators": [g.to_json() for g in self.generators], "depth": self.depth}

    @classmethod
    def from_json(cls, data):
        generators = [Isometry.from_json(entry) for entry in data.get("generators", [])]
        return cls(generators, int(data.get("depth", 6)))


def _matrix_key(g):
    # group elements are matrices up to sign
    m = g.matrix
    if m[0, 0] < 0 or (m[0, 0] == 0 and m[0, 1] < 0) or (m[0, 0] == 0 and m[0, 1] == 0 and m[1, 0] < 0):
        m = -m
    return tuple(np.round(m, 9).ravel() + 0.0)


def word_shells(group, depth):
    """Elements whose shortest word has length exactly k, for k = 0..depth; stops early for finite groups"""
    if depth < 0:
        raise DomainError(f"Word-ball depth must be non-negative, got {depth}")
    letters = []
    for g in group.generators:
        letters.extend([g, g.inverse()])
    identity = Isometry.identity()
    seen = {_matrix_key(identity)}
    shells = [[identity]]
    for _ in range(depth):
        next_frontier = []
        for word in shells[-1]:
            for letter in letters:
                candidate = word @ letter
                key = _matrix_key(candidate)
                if key not in seen:
                    seen.add(key)
                    next_frontier.append(candidate)
        if not next_frontier:
            break
        shells.append(next_frontier)
    return shells


def word_ball(group, depth):
    """Distinct elements represented by words of length at most depth"""
    return [g for shell in word_shells(group, depth) for g in shell]


def orbit(group, depth, base):
    """Orbit points g·base over the word ball"""
    base = check_interior(base)
    return [g.apply(base) for g in word_ball(group, depth)]


@dataclass
class ThinPartResult:
    """Membership of a point in the ε-thin part, with a witness element"""
    member: bool
    witness: Optional[Isometry]
    displacement: float


def thin_part_margin(group, epsilon, p, tol=None):
    """
    Decide whether p lies in the ε-thin part of an elementary group.

    Only cyclic and abelian groups are handled. Elliptic elements generate
    finite subgroups and never witness membership.
    """
    p = check_interior(p)
    tol = setting('parabolic_tol') if tol is None else tol
    if not group.generators:
        return ThinPartResult(False, None, math.inf)
    if len(group.generators) > 1 and not group.is_abelian(tol):
        raise ScopeError("Thin parts are computed for elementary (abelian) groups only")

    if len(group.generators) == 1:
        g = group.generators[0]
        kind = classify(g, tol)
        if kind in (IsometryClass.ELLIPTIC, IsometryClass.IDENTITY):
            return ThinPartResult(False, None, math.inf)
        if kind == IsometryClass.PARABOLIC:
            candidates = [g]
        else:
            # g^k displaces every point by at least k times the translation length
            max_power = max(1, int(math.ceil(epsilon / g.translation_length(tol))))
            candidates = [g.power(k) for k in range(1, max_power + 1)]
    else:
        candidates = [h for h in word_ball(group, group.depth)
                      if classify(h, tol) in (IsometryClass.PARABOLIC, IsometryClass.LOXODROMIC)]

    best = None
    best_value = math.inf
    for h in candidates:
        value = displacement(h, p)
        if value < best_value:
            best, best_value = h, value
    member = best_value < epsilon
    return ThinPartResult(member, best if member else None, best_value)


def visual_angle(base, z):
    """Direction of z (interior or ideal) seen from base, in the disk chart centered at base"""
    if isinstance(z, IdealPoint):
        if z.is_infinity:
            return 0.0
        z = z.value
    w = (complex(z) - base) / (complex(z) - base.conjugate())
    return math.atan2(w.imag, w.real) % (2.0 * math.pi)


def ideal_in_direction(base, angle):
    """Ideal point reached from base along the given visual angle"""
    e = complex(math.cos(angle), math.sin(angle))
    if abs(1.0 - e) < 1e-15:
        return IdealPoint.infinity()
    return IdealPoint(((base - base.conjugate() * e) / (1.0 - e)).real)


@dataclass
class OrbitDirection:
    """Visual angle of an orbit point with its angular uncertainty 2 sech(ρ/2), ρ = d(base, g·base)"""
    angle: float
    radius: float
    weight: float


def orbit_directions(group, depth, base):
    """Directions of the outer orbit shell {g·base : |g| = depth}; empty when the group is finite"""
    base = check_interior(base)
    shells = word_shells(group, depth)
    if len(shells) <= depth:
        return []
    directions = []
    for g in shells[-1]:
        z = g.apply(base)
        w = (z - base) / (z - base.conjugate())
        modulus = abs(w)
        if modulus == 0.0:
            continue
        radius = 2.0 * math.sqrt(max(0.0, 1.0 - modulus ** 2))
        directions.append(OrbitDirection(math.atan2(w.imag, w.real) % (2.0 * math.pi), radius, modulus))
    return directions


def _cluster(directions, merge_tol):
    if not directions:
        return []
    ordered = sorted(directions, key=lambda d: d.angle)
    clusters = [[ordered[0]]]
    for d in ordered[1:]:
        last = clusters[-1][-1]
        if angular_gap(d.angle, last.angle) <= merge_tol + d.radius + last.radius:
            clusters[-1].append(d)
        else:
            clusters.append([d])
    if len(clusters) > 1:
        first, last = clusters[0][0], clusters[-1][-1]
        if angular_gap(first.angle, last.angle) <= merge_tol + first.radius + last.radius:
            clusters[0] = clusters.pop() + clusters[0]
    return clusters


def _mean_angle(cluster):
    total = sum(d.weight * complex(math.cos(d.angle), math.sin(d.angle)) for d in cluster)
    return math.atan2(total.imag, total.real) % (2.0 * math.pi)


def limit_set_sample(group, depth, base, merge_tol=None, tol=None, snap=True):
    """
    Sample the limit set from the orbit of base under the word ball of the given depth.

    The directions of the outer shell of the orbit, seen from base, accumulate
    on the limit set. They are clustered with merge_tol plus their angular
    uncertainty and each cluster is reported at its mean direction. With snap
    set, a cluster is moved to the nearest fixed point of a loxodromic or
    parabolic word that lies inside it; these fixed points are exact limit
    points.
    """
    if not group.generators:
        raise DomainError("limit_set_sample needs at least one generator")
    if depth < 1:
        raise DomainError(f"depth must be at least 1, got {depth}")
    base = check_interior(base)
    merge_tol = setting('angular_merge_tol') if merge_tol is None else merge_tol
    tol = setting('parabolic_tol') if tol is None else tol

    clusters = _cluster(orbit_directions(group, depth, base), merge_tol)
    fixed = []
    if snap and clusters:
        for g in word_ball(group, depth):
            if classify(g, tol) in (IsometryClass.PARABOLIC, IsometryClass.LOXODROMIC):
                fixed.extend(g.fixed_points(tol))

    sample = []
    snapped = 0
    for cluster in clusters:
        center = _mean_angle(cluster)
        inside = [p for p in fixed
                  if any(angular_gap(visual_angle(base, p), d.angle) <= merge_tol + d.radius for d in cluster)]
        if inside:
            point = min(inside, key=lambda p: angular_gap(visual_angle(base, p), center))
            snapped += 1
        else:
            point = ideal_in_direction(base, center)
        if not any(angular_gap(visual_angle(base, point), visual_angle(base, q)) <= merge_tol for q in sample):
            sample.append(point)
    logger.debug(f"Limit set sample: {len(clusters)} orbit clusters at depth {depth}, "
                 f"{snapped} on fixed points of words")
    return sample


def same_ideal_sets(first, second, tol=1e-6):
    """Setwise comparison of ideal-point lists by boundary angle"""
    if len(first) != len(second):
        return False
    return all(any(angular_gap(p.boundary_angle(), q.boundary_angle()) <= tol for q in second)
               for p in first)


def cyclic(g, depth=6):
    return GroupPresentation([g], depth)


def ideal_points(values):
    """Convenience constructor; the string 'inf' becomes ∞"""
    return [IdealPoint.infinity() if v == "inf" else IdealPoint(float(v)) for v in values]
