"""
Convex Bodies

Closed convex subsets of the hyperbolic plane used as targets for distance
functions: complete geodesics, geodesic segments, metric disks and ideal
polygons (convex hulls of finitely many ideal points). Each body projects
points to their foot point and reports the unit gradient of the distance.
"""

import math
from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from ..core.errors import DomainError
from .isometry import (
    IdealPoint,
    angular_gap,
    base_change,
    cayley,
    check_interior,
    distance,
    geodesic_endpoints,
    geodesic_midpoint,
    geodesic_normalizer,
    inverse_cayley,
    unit_tangent_away,
)


@dataclass
class Projection:
    """Result of projecting a point onto a convex body"""
    foot: complex
    dist: float
    grad: Optional[complex]
    inside: bool

    @property
    def grad_defined(self):
        return self.grad is not None


class ConvexBody:
    """Base class for closed convex bodies in the upper half-plane"""
    kind = "body"

    def foot_point(self, z):
        raise NotImplementedError

    def contains(self, z, tol=1e-9):
        z = check_interior(z)
        return distance(z, self.foot_point(z)) <= tol

    def project(self, z, tol=1e-12):
        """Foot point, distance and unit gradient of the distance at z"""
        z = check_interior(z)
        foot = self.foot_point(z)
        dist = distance(z, foot)
        if dist <= tol:
            return Projection(foot=z, dist=0.0, grad=None, inside=True)
        return Projection(foot=foot, dist=dist, grad=unit_tangent_away(foot, z), inside=False)

    def transform(self, g):
        raise NotImplementedError

    def sample_points(self, rng, count):
        raise NotImplementedError

    def to_json(self):
        raise NotImplementedError


class GeodesicBody(ConvexBody):
    """Complete geodesic between two ideal points"""
    kind = "geodesic"

    def __init__(self, u, v):
        if u == v:
            raise DomainError("Geodesic endpoints must be distinct")
        self.u, self.v = u, v
        self._normalizer = geodesic_normalizer(u, v)
        self._inverse = self._normalizer.inverse()

    @property
    def endpoints(self):
        return (self.u, self.v)

    def foot_point(self, z):
        w = self._normalizer.apply(check_interior(z))
        return self._inverse.apply(1j * abs(w))

    def point_at(self, s):
        """Arc-length parametrization, s = 0 at the image of i"""
        return self._inverse.apply(1j * math.exp(s))

    def transform(self, g):
        return GeodesicBody(g.apply_ideal(self.u), g.apply_ideal(self.v))

    def sample_points(self, rng, count):
        return [self.point_at(s) for s in rng.uniform(-3.0, 3.0, size=count)]

    def to_json(self):
        return {"type": self.kind, "endpoints": [self.u.to_json(), self.v.to_json()]}

    def same_as(self, other, tol=1e-9):
        if not isinstance(other, GeodesicBody):
            return False
        mine = sorted(p.boundary_angle() for p in self.endpoints)
        theirs = sorted(p.boundary_angle() for p in other.endpoints)
        return all(angular_gap(a, b) <= tol for a, b in zip(mine, theirs))


class GeodesicSegment(ConvexBody):
    """Geodesic segment between two interior points"""
    kind = "segment"

    def __init__(self, p, q):
        self.p, self.q = check_interior(p), check_interior(q)
        if self.p == self.q:
            raise DomainError("Segment endpoints must be distinct")
        u, v = geodesic_endpoints(self.p, self.q)
        self._normalizer = geodesic_normalizer(u, v)
        self._inverse = self._normalizer.inverse()
        hp = abs(self._normalizer.apply(self.p))
        hq = abs(self._normalizer.apply(self.q))
        self._lo, self._hi = min(hp, hq), max(hp, hq)

    def foot_point(self, z):
        w = self._normalizer.apply(check_interior(z))
        height = min(max(abs(w), self._lo), self._hi)
        return self._inverse.apply(1j * height)

    def transform(self, g):
        return GeodesicSegment(g.apply(self.p), g.apply(self.q))

    def sample_points(self, rng, count):
        heights = np.exp(rng.uniform(math.log(self._lo), math.log(self._hi), size=count))
        return [self._inverse.apply(1j * h) for h in heights]

    def to_json(self):
        return {"type": self.kind,
                "endpoints": [[self.p.real, self.p.imag], [self.q.real, self.q.imag]]}


class DiskBody(ConvexBody):
    """Closed metric disk of a given center and radius"""
    kind = "disk"

    def __init__(self, center, radius):
        self.center = check_interior(center)
        if not radius > 0:
            raise DomainError(f"Disk radius must be positive, got {radius}")
        self.radius = float(radius)
        self._to_center = base_change(self.center)
        self._from_center = self._to_center.inverse()
        self._euclidean_radius = math.tanh(self.radius / 2.0)

    def to_disk_model(self, z):
        """Poincaré-disk coordinate of z with the center sent to 0"""
        return cayley(self._from_center.apply(check_interior(z)))

    def from_disk_model(self, w):
        return self._to_center.apply(inverse_cayley(w))

    def foot_point(self, z):
        w = self.to_disk_model(z)
        if abs(w) <= self._euclidean_radius:
            return check_interior(z)
        return self.from_disk_model(self._euclidean_radius * w / abs(w))

    def boundary_point(self, angle):
        return self.from_disk_model(self._euclidean_radius * complex(math.cos(angle), math.sin(angle)))

    def transform(self, g):
        return DiskBody(g.apply(self.center), self.radius)

    def sample_points(self, rng, count):
        radii = self._euclidean_radius * np.sqrt(rng.uniform(0.0, 1.0, size=count))
        angles = rng.uniform(0.0, 2.0 * math.pi, size=count)
        return [self.from_disk_model(r * complex(math.cos(a), math.sin(a))) for r, a in zip(radii, angles)]

    def to_json(self):
        return {"type": self.kind, "center": [self.center.real, self.center.imag], "radius": self.radius}


class IdealPolygon(ConvexBody):
    """Intersection of the half-planes bounded by geodesics joining consecutive ideal vertices"""
    kind = "ideal_polygon"

    def __init__(self, vertices: List[IdealPoint]):
        if len(vertices) < 3:
            raise DomainError("Ideal polygons need at least 3 vertices")
        self.vertices = sorted(vertices, key=lambda p: p.boundary_angle())
        n = len(self.vertices)
        self.sides = [GeodesicBody(self.vertices[k], self.vertices[(k + 1) % n]) for k in range(n)]
        # a vertex off each side fixes which half-plane belongs to the polygon
        self._side_signs = []
        for k, side in enumerate(self.sides):
            ref = side._normalizer.apply_ideal(self.vertices[(k + 2) % n])
            self._side_signs.append(1.0 if ref.value > 0 else -1.0)

    def contains(self, z, tol=1e-9):
        z = check_interior(z)
        for side, sign in zip(self.sides, self._side_signs):
            w = side._normalizer.apply(z)
            if sign * w.real < -tol * abs(w):
                return False
        return True

    def foot_point(self, z):
        z = check_interior(z)
        if self.contains(z, tol=0.0):
            return z
        feet = [side.foot_point(z) for side in self.sides]
        return min(feet, key=lambda f: distance(z, f))

    def transform(self, g):
        return IdealPolygon([g.apply_ideal(p) for p in self.vertices])

    def sample_points(self, rng, count):
        samples = []
        while len(samples) < count:
            radius = 0.95 * math.sqrt(rng.uniform())
            angle = rng.uniform(0.0, 2.0 * math.pi)
            z = inverse_cayley(radius * complex(math.cos(angle), math.sin(angle)))
            if self.contains(z, tol=0.0):
                samples.append(z)
        return samples

    def to_json(self):
        return {"type": self.kind, "vertices": [p.to_json() for p in self.vertices]}


def project_convex(body, p):
    """Project p onto body; grad is None when p lies in the body"""
    return body.project(p)


def convex_hull_ideal(points, merge_tol=1e-12):
    """Closed convex hull of finitely many ideal points"""
    distinct = []
    for p in sorted(points, key=lambda q: q.boundary_angle()):
        if not any(angular_gap(p.boundary_angle(), q.boundary_angle()) <= merge_tol for q in distinct):
            distinct.append(p)
    if len(distinct) < 2:
        raise DomainError("The convex hull needs at least 2 distinct ideal points")
    if len(distinct) == 2:
        return GeodesicBody(distinct[0], distinct[1])
    return IdealPolygon(distinct)


def midpoint_convexity_defect(body, rng, pairs=200, tol=1e-9):
    """Number of sampled member pairs whose geodesic midpoint leaves the body"""
    points = body.sample_points(rng, 2 * pairs)
    failures = 0
    for p, q in zip(points[::2], points[1::2]):
        if not body.contains(geodesic_midpoint(p, q), tol=tol):
            failures += 1
    return failures


def body_from_json(data):
    kind = data.get("type")
    if kind == "geodesic":
        u, v = (IdealPoint.from_json(e) for e in data["endpoints"])
        return GeodesicBody(u, v)
    if kind == "segment":
        p, q = (complex(x, y) for x, y in data["endpoints"])
        return GeodesicSegment(p, q)
    if kind == "disk":
        x, y = data["center"]
        return DiskBody(complex(x, y), float(data["radius"]))
    if kind == "ideal_polygon":
        return IdealPolygon([IdealPoint.from_json(v) for v in data["vertices"]])
    raise DomainError(f"Unknown convex body type: {kind}")


def imaginary_axis():
    return GeodesicBody(IdealPoint(0.0), IdealPoint.infinity())
