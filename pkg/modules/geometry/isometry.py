"""
Isometries of the Upper Half-Plane

Points of the hyperbolic plane are complex numbers z = x + iy with y > 0.
Ideal points live on R ∪ {∞} and are tagged with IdealPoint. Isometries are
unimodular real 2x2 matrices acting by Möbius transformations.
"""

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from ..config.defaults import setting
from ..core.errors import DomainError


@dataclass(frozen=True)
class IdealPoint:
    """A point of the ideal boundary R ∪ {∞}"""
    value: float

    @classmethod
    def infinity(cls):
        return cls(math.inf)

    @property
    def is_infinity(self):
        return math.isinf(self.value)

    def boundary_angle(self):
        """Angle of the point on the unit circle after the Cayley transform"""
        if self.is_infinity:
            return 0.0
        zeta = (self.value - 1j) / (self.value + 1j)
        return math.atan2(zeta.imag, zeta.real) % (2.0 * math.pi)

    def to_json(self):
        return {"ideal": "inf" if self.is_infinity else float(self.value)}

    @classmethod
    def from_json(cls, data):
        value = data["ideal"]
        if value == "inf":
            return cls.infinity()
        return cls(float(value))

    def __repr__(self):
        return "IdealPoint(inf)" if self.is_infinity else f"IdealPoint({self.value:g})"


def angular_gap(a, b):
    """Distance between two angles on the circle"""
    gap = abs(a - b) % (2.0 * math.pi)
    return min(gap, 2.0 * math.pi - gap)


def point(x, y):
    """Build an interior point, checking y > 0"""
    if not y > 0:
        raise DomainError(f"Interior points need y > 0, got y={y}")
    return complex(x, y)


def check_interior(p):
    """Return p as a complex number or raise DomainError for ideal / invalid input"""
    if isinstance(p, IdealPoint):
        raise DomainError(f"Expected an interior point, got ideal point {p!r}")
    p = complex(p)
    if not p.imag > 0:
        raise DomainError(f"Interior points need y > 0, got {p}")
    return p


def distance(p, q):
    """Hyperbolic distance in the upper half-plane of curvature -1"""
    p = check_interior(p)
    q = check_interior(q)
    # arcsinh form of arccosh(1 + |p-q|^2 / (2 y_p y_q)), accurate for nearby points
    return 2.0 * math.asinh(abs(p - q) / (2.0 * math.sqrt(p.imag * q.imag)))


def unit_tangent_away(source, z):
    """
    Unit velocity at z of the geodesic running from source through z.

    The vector is returned as a complex number holding its Euclidean
    components; its hyperbolic length is 1.
    """
    source = check_interior(source)
    z = check_interior(z)
    y, yq = z.imag, source.imag
    gx = (z.real - source.real) / (y * yq)
    gy = (y - yq) / (y * yq) - abs(z - source) ** 2 / (2.0 * y * y * yq)
    norm = math.hypot(gx, gy)
    if norm == 0.0:
        return None
    return complex(gx, gy) * (y / norm)


class IsometryClass(Enum):
    IDENTITY = "identity"
    ELLIPTIC = "elliptic"
    PARABOLIC = "parabolic"
    LOXODROMIC = "loxodromic"


class Isometry:
    """Orientation-preserving isometry z ↦ (az + b)/(cz + d) with ad − bc = 1"""

    def __init__(self, a, b, c, d):
        det = a * d - b * c
        if not det > 0:
            raise DomainError(f"Matrix must have positive determinant, got {det}")
        scale = math.sqrt(det)
        self.a, self.b, self.c, self.d = a / scale, b / scale, c / scale, d / scale

    @classmethod
    def from_matrix(cls, matrix):
        m = np.asarray(matrix, dtype=float).reshape(2, 2)
        return cls(m[0, 0], m[0, 1], m[1, 0], m[1, 1])

    @classmethod
    def identity(cls):
        return cls(1.0, 0.0, 0.0, 1.0)

    @property
    def matrix(self):
        return np.array([[self.a, self.b], [self.c, self.d]])

    @property
    def trace(self):
        return self.a + self.d

    def determinant(self):
        return self.a * self.d - self.b * self.c

    def __matmul__(self, other):
        return Isometry.from_matrix(self.matrix @ other.matrix)

    def compose(self, other):
        """self ∘ other"""
        return self @ other

    def inverse(self):
        return Isometry(self.d, -self.b, -self.c, self.a)

    def power(self, k):
        result = Isometry.identity()
        base = self if k >= 0 else self.inverse()
        for _ in range(abs(k)):
            result = result @ base
        return result

    def conjugate_by(self, h):
        """h g h⁻¹"""
        return h @ self @ h.inverse()

    def apply(self, z):
        z = check_interior(z)
        return (self.a * z + self.b) / (self.c * z + self.d)

    def apply_ideal(self, p):
        if p.is_infinity:
            if self.c == 0.0:
                return IdealPoint.infinity()
            return IdealPoint(self.a / self.c)
        denom = self.c * p.value + self.d
        if denom == 0.0:
            return IdealPoint.infinity()
        return IdealPoint((self.a * p.value + self.b) / denom)

    def __call__(self, p):
        if isinstance(p, IdealPoint):
            return self.apply_ideal(p)
        return self.apply(p)

    def derivative(self, z):
        return 1.0 / (self.c * complex(z) + self.d) ** 2

    def push_tangent(self, z, v):
        """Push a tangent vector v at z forward to g(z)"""
        return self.derivative(z) * v

    def is_identity(self, tol=1e-9):
        m = self.matrix
        return bool(np.max(np.abs(m - np.eye(2))) <= tol or np.max(np.abs(m + np.eye(2))) <= tol)

    def classify(self, tol=None):
        return classify(self, tol)

    def translation_length(self, tol=None):
        if self.classify(tol) != IsometryClass.LOXODROMIC:
            return 0.0
        return 2.0 * math.acosh(abs(self.trace) / 2.0)

    def fixed_points(self, tol=None):
        """
        Fixed points on the closed half-plane.

        Loxodromic: (attracting, repelling) ideal points. Parabolic: one ideal
        point. Elliptic: one interior point. Identity: empty list.
        """
        tol = setting('parabolic_tol') if tol is None else tol
        kind = self.classify(tol)
        if kind == IsometryClass.IDENTITY:
            return []
        a, b, c, d = self.a, self.b, self.c, self.d
        if kind == IsometryClass.ELLIPTIC:
            disc = complex((a + d) ** 2 - 4.0)
            root = np.sqrt(disc)
            z = ((a - d) + root) / (2.0 * c)
            if z.imag < 0:
                z = ((a - d) - root) / (2.0 * c)
            return [complex(z)]
        if kind == IsometryClass.PARABOLIC:
            if abs(c) <= tol * max(1.0, abs(a), abs(b), abs(d)):
                return [IdealPoint.infinity()]
            return [IdealPoint((a - d) / (2.0 * c))]
        root = math.sqrt((a + d) ** 2 - 4.0)
        if c == 0.0:
            finite = IdealPoint(b / (d - a))
            # g(z) = a² z + ab, so ∞ attracts when |a| > 1
            if abs(a) > 1.0:
                return [IdealPoint.infinity(), finite]
            return [finite, IdealPoint.infinity()]
        candidates = [((a - d) + root) / (2.0 * c), ((a - d) - root) / (2.0 * c)]
        candidates.sort(key=lambda x: abs(c * x + d))
        # |g'(x)| = 1/(cx + d)^2 < 1 at the attracting point
        attracting, repelling = candidates[1], candidates[0]
        return [IdealPoint(attracting), IdealPoint(repelling)]

    def to_json(self):
        return {"matrix": [float(self.a), float(self.b), float(self.c), float(self.d)]}

    @classmethod
    def from_json(cls, data):
        values = data["matrix"]
        if len(values) != 4:
            raise DomainError(f"Isometry matrix needs 4 entries, got {len(values)}")
        return cls(*[float(v) for v in values])

    def __repr__(self):
        return f"Isometry([[{self.a:.6g}, {self.b:.6g}], [{self.c:.6g}, {self.d:.6g}]])"


def classify(g, tol=None):
    """Classify an isometry by its trace; ±id is reported as IDENTITY. tol defaults to parabolic_tol"""
    tol = setting('parabolic_tol') if tol is None else tol
    if g.is_identity(tol):
        return IsometryClass.IDENTITY
    t = abs(g.trace)
    if abs(t - 2.0) <= tol:
        return IsometryClass.PARABOLIC
    if t < 2.0:
        return IsometryClass.ELLIPTIC
    return IsometryClass.LOXODROMIC


def displacement(g, p):
    """d(p, g·p)"""
    p = check_interior(p)
    return distance(p, g.apply(p))


def base_change(p):
    """Isometry sending i to the interior point p"""
    p = check_interior(p)
    s = math.sqrt(p.imag)
    return Isometry(s, p.real / s, 0.0, 1.0 / s)


def rotation_about(p, angle):
    """Counterclockwise rotation by angle about the interior point p"""
    half = angle / 2.0
    k = Isometry(math.cos(half), math.sin(half), -math.sin(half), math.cos(half))
    return k.conjugate_by(base_change(p))


def geodesic_normalizer(u, v):
    """Isometry sending the ideal points u ↦ 0 and v ↦ ∞"""
    if u == v:
        raise DomainError("Geodesic endpoints must be distinct")
    if u.is_infinity:
        return Isometry(0.0, -1.0, 1.0, -v.value)
    if v.is_infinity:
        return Isometry(1.0, -u.value, 0.0, 1.0)
    if u.value < v.value:
        return Isometry(1.0, -u.value, -1.0, v.value)
    return Isometry(1.0, -u.value, 1.0, -v.value)


def translation_along(u, v, length):
    """Loxodromic isometry translating by length along the geodesic from u towards v"""
    normalizer = geodesic_normalizer(u, v)
    shift = math.exp(length / 2.0)
    return Isometry(shift, 0.0, 0.0, 1.0 / shift).conjugate_by(normalizer.inverse())


def geodesic_endpoints(p, q, tol=1e-12):
    """Ideal endpoints of the complete geodesic through two interior points"""
    p = check_interior(p)
    q = check_interior(q)
    if abs(p.real - q.real) <= tol * max(1.0, abs(p), abs(q)):
        return IdealPoint(p.real), IdealPoint.infinity()
    center = (abs(p) ** 2 - abs(q) ** 2) / (2.0 * (p.real - q.real))
    radius = abs(p - center)
    return IdealPoint(center - radius), IdealPoint(center + radius)


def geodesic_midpoint(p, q):
    """Hyperbolic midpoint of the segment [p, q]"""
    p = check_interior(p)
    q = check_interior(q)
    if abs(p - q) == 0.0:
        return p
    u, v = geodesic_endpoints(p, q)
    normalizer = geodesic_normalizer(u, v)
    hp = abs(normalizer.apply(p))
    hq = abs(normalizer.apply(q))
    return normalizer.inverse().apply(1j * math.sqrt(hp * hq))


def cayley(z):
    """Upper half-plane to unit disk, i ↦ 0"""
    z = complex(z)
    return (z - 1j) / (z + 1j)


def inverse_cayley(w):
    w = complex(w)
    return 1j * (1.0 + w) / (1.0 - w)
