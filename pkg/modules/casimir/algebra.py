"""
Lie Algebra Data

Real Lie algebras given by structure constants [Z_i, Z_j] = Σ_k c[k, i, j] Z_k,
with a Cartan involution θ. Elements are coefficient vectors in the basis Z.
"""

import json
import logging
import math
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np
from scipy.linalg import null_space

from ..core.errors import DomainError

logger = logging.getLogger(__name__)


@dataclass
class LieAlgebraData:
    """Structure constants c[k, i, j] and Cartan involution θ"""
    structure: np.ndarray
    theta: Optional[np.ndarray] = None
    names: List[str] = field(default_factory=list)
    name: str = "algebra"
    tol: float = 1e-12

    def __post_init__(self):
        self.structure = np.asarray(self.structure, dtype=float)
        n = self.structure.shape[0]
        if self.structure.shape != (n, n, n):
            raise DomainError(f"Structure constants must have shape (n, n, n), got {self.structure.shape}")
        if self.theta is not None:
            self.theta = np.asarray(self.theta, dtype=float)
        if not self.names:
            self.names = [f"Z{i}" for i in range(n)]
        if np.max(np.abs(self.structure + np.swapaxes(self.structure, 1, 2)), initial=0.0) > self.tol:
            raise DomainError("Structure constants are not antisymmetric")
        defect = self.jacobi_defect()
        if defect > self.tol:
            raise DomainError(f"Jacobi identity fails by {defect:.3e}")

    @property
    def dimension(self):
        return self.structure.shape[0]

    def basis(self, i):
        e = np.zeros(self.dimension)
        e[i] = 1.0
        return e

    def bracket(self, x, y):
        return np.einsum('kij,i,j->k', self.structure, x, y)

    def ad(self, x):
        """Matrix of ad x: (ad x)_{kj} = Σ_i x_i c[k, i, j]"""
        return np.einsum('kij,i->kj', self.structure, np.asarray(x, dtype=float))

    def jacobi_defect(self):
        n = self.dimension
        worst = 0.0
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    x, y, z = self.basis(i), self.basis(j), self.basis(k)
                    total = (self.bracket(x, self.bracket(y, z)) + self.bracket(y, self.bracket(z, x))
                             + self.bracket(z, self.bracket(x, y)))
                    worst = max(worst, float(np.max(np.abs(total))))
        return worst

    def to_json(self):
        entries = [[k, i, j, float(self.structure[k, i, j])]
                   for k, i, j in zip(*np.nonzero(self.structure))]
        data = {'name': self.name, 'names': self.names, 'dimension': self.dimension, 'structure': entries}
        if self.theta is not None:
            data['theta'] = self.theta.tolist()
        return data

    @classmethod
    def from_json(cls, data):
        n = int(data['dimension'])
        structure = np.zeros((n, n, n))
        for k, i, j, value in data['structure']:
            structure[int(k), int(i), int(j)] = float(value)
        theta = data.get('theta')
        return cls(structure, None if theta is None else np.array(theta, dtype=float),
                   list(data.get('names', [])), data.get('name', 'algebra'))


def load_algebra(path):
    with open(path, 'r') as f:
        return LieAlgebraData.from_json(json.load(f))


def killing_form(alg):
    """B(Z_i, Z_j) = tr(ad Z_i ∘ ad Z_j)"""
    ads = [alg.ad(alg.basis(i)) for i in range(alg.dimension)]
    return np.array([[np.trace(a @ b) for b in ads] for a in ads])


def sl2():
    """sl(2,ℝ) in the basis (H, E, F), θ(X) = -Xᵀ"""
    c = np.zeros((3, 3, 3))
    H, E, F = 0, 1, 2
    c[E, H, E], c[E, E, H] = 2.0, -2.0
    c[F, H, F], c[F, F, H] = -2.0, 2.0
    c[H, E, F], c[H, F, E] = 1.0, -1.0
    theta = np.array([[-1.0, 0.0, 0.0],
                      [0.0, 0.0, -1.0],
                      [0.0, -1.0, 0.0]])
    return LieAlgebraData(c, theta, ["H", "E", "F"], name="sl2")


def abelian(n):
    return LieAlgebraData(np.zeros((n, n, n)), -np.eye(n), name=f"abelian{n}")


@dataclass
class CartanSplit:
    """
    Signed-orthonormal bases: columns of p_basis satisfy B(X_i, X_j) = δ_ij and
    columns of k_basis satisfy B(Y_i, Y_j) = -δ_ij.
    """
    algebra: LieAlgebraData
    p_basis: np.ndarray
    k_basis: np.ndarray
    killing: np.ndarray

    @property
    def p_dim(self):
        return self.p_basis.shape[1]

    @property
    def k_dim(self):
        return self.k_basis.shape[1]

    def X(self, i):
        return self.p_basis[:, i]

    def Y(self, j):
        return self.k_basis[:, j]

    def signed_basis(self):
        """(X_1, ..., X_p, Y_1, ..., Y_k) with signs (+1, ..., -1, ...)"""
        return (np.hstack([self.p_basis, self.k_basis]),
                np.concatenate([np.ones(self.p_dim), -np.ones(self.k_dim)]))

    def p_coordinates(self, x):
        """Coordinates of x ∈ 𝔭 in the X basis"""
        return self.p_basis.T @ self.killing @ x

    def k_coordinates(self, y):
        """Coordinates of y ∈ 𝔨 in the Y basis"""
        return -(self.k_basis.T @ self.killing @ y)

    def in_p(self, x, tol=1e-10):
        theta = self.algebra.theta
        return bool(np.max(np.abs(theta @ x + x)) <= tol * max(1.0, float(np.max(np.abs(x)))))

    def in_k(self, y, tol=1e-10):
        theta = self.algebra.theta
        return bool(np.max(np.abs(theta @ y - y)) <= tol * max(1.0, float(np.max(np.abs(y)))))

    def k_part(self, z):
        return 0.5 * (z + self.algebra.theta @ z)

    def p_part(self, z):
        return 0.5 * (z - self.algebra.theta @ z)


def _orthonormalize(vectors, gram_form, sign):
    """Gram-Schmidt with respect to sign·B, with a deterministic sign per vector"""
    basis = []
    for v in vectors.T:
        w = v.copy()
        for b in basis:
            w = w - sign * (b @ gram_form @ w) * b
        norm2 = sign * float(w @ gram_form @ w)
        if norm2 <= 1e-14:
            raise DomainError("Killing form has the wrong signature on a Cartan eigenspace")
        w = w / math.sqrt(norm2)
        if w[np.argmax(np.abs(w))] < 0:
            w = -w
        basis.append(w)
    return np.array(basis).T if basis else np.zeros((len(vectors), 0))


def cartan_split(alg, tol=1e-10):
    """
    Split 𝔤 = 𝔨 ⊕ 𝔭 into θ-eigenspaces with signed-orthonormal bases.

    Raises:
        DomainError: θ is missing, not involutive, not an automorphism, or B has
            the wrong signature on 𝔨 or 𝔭
    """
    theta = alg.theta
    if theta is None:
        raise DomainError("The algebra carries no Cartan involution")
    n = alg.dimension
    if np.max(np.abs(theta @ theta - np.eye(n))) > tol:
        raise DomainError("θ is not an involution")
    for i in range(n):
        for j in range(n):
            x, y = alg.basis(i), alg.basis(j)
            if np.max(np.abs(theta @ alg.bracket(x, y) - alg.bracket(theta @ x, theta @ y))) > tol:
                raise DomainError("θ is not a Lie algebra automorphism")
    killing = killing_form(alg)
    p_raw = null_space(theta + np.eye(n))
    k_raw = null_space(theta - np.eye(n))
    p_basis = _orthonormalize(p_raw, killing, 1.0)
    k_basis = _orthonormalize(k_raw, killing, -1.0)
    logger.debug(f"Cartan split of {alg.name}: dim 𝔭 = {p_basis.shape[1]}, dim 𝔨 = {k_basis.shape[1]}")
    return CartanSplit(alg, p_basis, k_basis, killing)


def curvature_from_brackets(split, X, Y, Z, tol=1e-10):
    """R(X, Y)Z = -[[X, Y], Z] on 𝔭 = T_o(G/K) with the metric B|𝔭"""
    alg = split.algebra
    for name, v in (('X', X), ('Y', Y), ('Z', Z)):
        if not split.in_p(np.asarray(v, dtype=float), tol):
            raise DomainError(f"{name} does not lie in 𝔭")
    return -alg.bracket(alg.bracket(X, Y), Z)


def sectional_curvature(split, X, Y):
    """B(R(X, Y)Y, X) / (B(X, X)B(Y, Y) - B(X, Y)²)"""
    B = split.killing
    R = curvature_from_brackets(split, X, Y, Y)
    area2 = (X @ B @ X) * (Y @ B @ Y) - (X @ B @ Y) ** 2
    if area2 <= 0:
        raise DomainError("X and Y span a degenerate plane")
    return float((R @ B @ X) / area2)


def bianchi_defect(split, X, Y, Z):
    total = (curvature_from_brackets(split, X, Y, Z) + curvature_from_brackets(split, Y, Z, X)
             + curvature_from_brackets(split, Z, X, Y))
    return float(np.max(np.abs(total)))
