"""
Closed-Form Spectrum Tables

Bottoms of essential spectra on hyperbolic spaces: the Laplacian on functions,
Hodge Laplacians on k-forms, Dolbeault Laplacians on (p,q)-forms, the McKean
lower bound and the Dirac operator in the plane cases. Values are computed in
rational arithmetic and converted to float at the end.
"""

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from ..core.errors import DomainError, ScopeError
from .descriptors import SpectrumDescriptor

FIELD_DIMENSIONS = {'R': 1, 'C': 2, 'H': 4, 'O': 8}


@dataclass(frozen=True)
class HyperbolicSpaceSpec:
    """Hyperbolic space over F of rank ℓ, normalized to maximal curvature -1"""
    field: str
    ell: int

    def __post_init__(self):
        if self.field not in FIELD_DIMENSIONS:
            raise DomainError(f"Unknown field {self.field!r}; expected one of R, C, H, O")
        if self.field == 'O' and self.ell != 2:
            raise DomainError("The octonionic hyperbolic space only exists for ℓ = 2")
        if self.m < 2:
            raise DomainError(f"Real dimension must be at least 2, got {self.m}")

    @property
    def d(self):
        return FIELD_DIMENSIONS[self.field]

    @property
    def m(self):
        return self.d * self.ell


def _delta0_exact(m, d):
    if d not in FIELD_DIMENSIONS.values():
        raise DomainError(f"d must be one of 1, 2, 4, 8, got {d}")
    if m < 2:
        raise DomainError(f"m must be at least 2, got {m}")
    return Fraction((m + d - 2) ** 2, 4)


def delta0(m, d):
    """Bottom of the spectrum of the Laplacian on functions: (m + d - 2)^2 / 4"""
    return float(_delta0_exact(m, d))


def delta_k_exact(space, k):
    if not 0 <= k <= space.m:
        raise DomainError(f"Form degree must satisfy 0 <= k <= {space.m}, got {k}")
    if space.field in ('H', 'O'):
        raise ScopeError(f"No closed form for δ_k over {space.field}; "
                         f"only the real and complex hyperbolic spaces are tabulated")
    if space.field == 'R':
        # Hodge duality δ_k = δ_{m-k}; the formula is stated for k ≤ m/2
        j = min(k, space.m - k)
        return (Fraction(j) - Fraction(space.m - 1, 2)) ** 2
    if k == space.ell:
        return Fraction(1)
    return Fraction((k - space.ell) ** 2)


def delta_k(space, k):
    return float(delta_k_exact(space, k))


def hodge_spectrum(space, k):
    """Essential spectrum of the Hodge Laplacian on k-forms"""
    bottom = delta_k(space, k)
    if 2 * k == space.m:
        return SpectrumDescriptor.half_line(bottom, points=(0.0,))
    return SpectrumDescriptor.half_line(bottom)


def dolbeault_spectrum(ell, p, q):
    """Essential spectrum of the Dolbeault Laplacian on (p,q)-forms of complex hyperbolic space"""
    if ell < 1 or not 0 <= p <= ell or not 0 <= q <= ell:
        raise DomainError(f"Need 0 <= p, q <= ℓ, got ℓ={ell}, p={p}, q={q}")
    if p + q == ell:
        return SpectrumDescriptor.half_line(1.0, points=(0.0,))
    return SpectrumDescriptor.half_line(float((p + q - ell) ** 2))


def mckean_bound(m, a):
    """Lower bound (m-1)^2 a^2 / 4 for simply connected manifolds with K <= -a^2"""
    if m < 2 or not a > 0:
        raise DomainError(f"Need m >= 2 and a > 0, got m={m}, a={a}")
    return (m - 1) ** 2 * a ** 2 / 4.0


def mckean_printed_form(m, a):
    """The alternative reading (m-1)^2 / (4 a^2); agrees with mckean_bound only at a = 1"""
    if m < 2 or not a > 0:
        raise DomainError(f"Need m >= 2 and a > 0, got m={m}, a={a}")
    return (m - 1) ** 2 / (4.0 * a ** 2)


MCKEAN_NOTE = ("McKean bound evaluated as (m-1)^2 a^2 / 4; the printed form (m-1)^2/4a^2 "
               "differs for a != 1 and is dimensionally inconsistent")


class DiracContext(Enum):
    FULL_PLANE = "full-plane"
    INFINITE_AREA = "geometrically-finite-infinite-area"
    FINITE_AREA_SPIN_TRIVIAL = "finite-area-spin-trivial"
    FINITE_AREA_SPIN_NONTRIVIAL = "finite-area-spin-nontrivial"


def dirac_table(context):
    """Essential spectrum of the Dirac operator on hyperbolic surfaces"""
    context = DiracContext(context)
    if context == DiracContext.FINITE_AREA_SPIN_NONTRIVIAL:
        return SpectrumDescriptor.empty()
    return SpectrumDescriptor.real_line()


def hodge_table(field, ell):
    """Rows (k, δ_k, spectrum text) for k = 0..m"""
    space = HyperbolicSpaceSpec(field, ell)
    return [(k, delta_k(space, k), str(hodge_spectrum(space, k))) for k in range(space.m + 1)]


def dolbeault_table(ell):
    """Rows (p, q, bottom, spectrum text) for all bidegrees 0 <= p, q <= ℓ"""
    rows = []
    for p in range(ell + 1):
        for q in range(ell + 1):
            spectrum = dolbeault_spectrum(ell, p, q)
            rows.append((p, q, spectrum.half_line_bottom, str(spectrum)))
    return rows
