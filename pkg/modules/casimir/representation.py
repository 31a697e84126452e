"""
Representations

π_* given by matrices on E_0, either for every basis element of 𝔤 (domain "g")
or for the signed-orthonormal 𝔨 basis Y_j of a Cartan split (domain "k").
"""

import json
import logging
from dataclasses import dataclass, field
from itertools import combinations
from typing import List, Optional

import numpy as np

from ..core.errors import DomainError, PreconditionError

logger = logging.getLogger(__name__)


@dataclass
class Representation:
    """Matrices π_*(Z_i) (domain "g") or π_*(Y_j) (domain "k") on E_0 with inner product G"""
    split: object
    matrices: List[np.ndarray]
    domain: str = "g"
    metric: Optional[np.ndarray] = None
    name: str = "rep"
    tol: float = 1e-10
    check: bool = field(default=True, repr=False)

    def __post_init__(self):
        if self.domain not in ("g", "k"):
            raise DomainError(f"Representation domain must be 'g' or 'k', got {self.domain}")
        self.matrices = [np.atleast_2d(np.asarray(m)) for m in self.matrices]
        expected = self.split.algebra.dimension if self.domain == "g" else self.split.k_dim
        if len(self.matrices) != expected:
            raise DomainError(f"Expected {expected} matrices for domain '{self.domain}', got {len(self.matrices)}")
        dim = self.matrices[0].shape[0] if self.matrices else 0
        if any(m.shape != (dim, dim) for m in self.matrices):
            raise DomainError("Representation matrices must be square of equal size")
        if self.metric is None:
            self.metric = np.eye(dim)
        if self.check:
            self.validate()

    @property
    def dimension(self):
        return self.matrices[0].shape[0]

    @property
    def is_complex(self):
        return any(np.iscomplexobj(m) for m in self.matrices)

    def of(self, z):
        """π_*(z) for z given in algebra coordinates"""
        z = np.asarray(z, dtype=float)
        if self.domain == "g":
            return sum(c * m for c, m in zip(z, self.matrices))
        if not self.split.in_k(z):
            raise PreconditionError("Representation is only defined on 𝔨")
        coords = self.split.k_coordinates(z)
        return sum(c * m for c, m in zip(coords, self.matrices))

    def of_k(self, j):
        return self.of(self.split.Y(j))

    def of_p(self, i):
        if self.domain != "g":
            raise PreconditionError("A 𝔨-representation does not act on 𝔭")
        return self.of(self.split.X(i))

    def is_skew(self, m):
        """m* G + G m = 0 (adjoint taken with respect to the metric G)"""
        defect = m.conj().T @ self.metric + self.metric @ m
        return float(np.max(np.abs(defect), initial=0.0)) <= self.tol

    def homomorphism_defect(self):
        """max ‖π_*([a, b]) - [π_*(a), π_*(b)]‖ over the defining basis"""
        alg = self.split.algebra
        if self.domain == "g":
            elements = [alg.basis(i) for i in range(alg.dimension)]
        else:
            elements = [self.split.Y(j) for j in range(self.split.k_dim)]
        worst = 0.0
        for a in elements:
            for b in elements:
                lhs = self.of(alg.bracket(a, b))
                pa, pb = self.of(a), self.of(b)
                worst = max(worst, float(np.max(np.abs(lhs - (pa @ pb - pb @ pa)), initial=0.0)))
        return worst

    def validate(self):
        defect = self.homomorphism_defect()
        if defect > self.tol:
            raise DomainError(f"π_* is not a homomorphism (defect {defect:.3e})")
        for j in range(self.split.k_dim):
            if not self.is_skew(self.of_k(j)):
                raise DomainError("π_*(𝔨) must be skew with respect to the inner product on E_0")

    def to_json(self):
        data = {'name': self.name, 'domain': self.domain,
                'matrices': [np.real(m).tolist() for m in self.matrices]}
        if self.is_complex:
            data['imag'] = [np.imag(m).tolist() for m in self.matrices]
        if not np.allclose(self.metric, np.eye(self.dimension)):
            data['metric'] = np.real(self.metric).tolist()
        return data

    @classmethod
    def from_json(cls, split, data):
        matrices = [np.array(m, dtype=float) for m in data['matrices']]
        if 'imag' in data:
            matrices = [m + 1j * np.array(i, dtype=float) for m, i in zip(matrices, data['imag'])]
        metric = data.get('metric')
        return cls(split, matrices, data.get('domain', 'g'),
                   None if metric is None else np.array(metric, dtype=float), data.get('name', 'rep'))


def load_representation(split, path):
    with open(path, 'r') as f:
        return Representation.from_json(split, json.load(f))


def trivial_representation(split, dimension=1):
    zero = np.zeros((dimension, dimension))
    return Representation(split, [zero] * split.algebra.dimension, "g", name="trivial")


def adjoint_representation(split):
    """ad on 𝔤 with the positive inner product B_θ(x, y) = -B(x, θy)"""
    alg = split.algebra
    metric = -split.killing @ alg.theta
    metric = 0.5 * (metric + metric.T)
    return Representation(split, [alg.ad(alg.basis(i)) for i in range(alg.dimension)], "g", metric, "adjoint")


def isotropy_matrix(split, y):
    """ad(y)|𝔭 in the X basis, an element of so(𝔭)"""
    alg = split.algebra
    columns = [split.p_coordinates(alg.bracket(y, split.X(i))) for i in range(split.p_dim)]
    return np.array(columns).T


def exterior_power_action(matrix, k):
    """Derivation action of an endomorphism on Λ^k, in the basis e_I of sorted k-subsets"""
    matrix = np.asarray(matrix)
    n = matrix.shape[0]
    if not 0 <= k <= n:
        raise DomainError(f"Exterior degree must lie in [0, {n}], got {k}")
    subsets = list(combinations(range(n), k))
    index = {s: i for i, s in enumerate(subsets)}
    out = np.zeros((len(subsets), len(subsets)), dtype=matrix.dtype)
    for col, subset in enumerate(subsets):
        for m, i in enumerate(subset):
            for r in range(n):
                coefficient = matrix[r, i]
                if coefficient == 0:
                    continue
                replaced = list(subset)
                replaced[m] = r
                if len(set(replaced)) < k:
                    continue
                # sign of the permutation sorting the replaced index list
                order = sorted(range(k), key=lambda q: replaced[q])
                sign = _permutation_sign(order)
                out[index[tuple(sorted(replaced))], col] += sign * coefficient
    return out


def _permutation_sign(order):
    sign = 1
    seen = [False] * len(order)
    for start in range(len(order)):
        if seen[start]:
            continue
        length = 0
        q = start
        while not seen[q]:
            seen[q] = True
            q = order[q]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def isotropy_representation(split, k):
    """The 𝔨-representation on Λ^k 𝔭 induced by Ad"""
    matrices = [exterior_power_action(isotropy_matrix(split, split.Y(j)), k) for j in range(split.k_dim)]
    return Representation(split, matrices, "k", name=f"Λ^{k}𝔭")
