"""
Partitions of Unity

ψ_V = η_V / sqrt(Σ η²) for quintic-smoothstep bumps η_V, so Σ ψ_V² = 1 at every
node. First and second derivatives are evaluated in closed form.
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..core.errors import DomainError, GridError

logger = logging.getLogger(__name__)


def smoothstep(s):
    """Quintic smoothstep S with S(0) = 0, S(1) = 1 and S', S'' vanishing at both ends"""
    s = np.clip(s, 0.0, 1.0)
    return s ** 3 * (10.0 - 15.0 * s + 6.0 * s ** 2)


def smoothstep_d1(s):
    inside = (s > 0.0) & (s < 1.0)
    s = np.clip(s, 0.0, 1.0)
    return np.where(inside, 30.0 * s ** 2 * (1.0 - s) ** 2, 0.0)


def smoothstep_d2(s):
    inside = (s > 0.0) & (s < 1.0)
    s = np.clip(s, 0.0, 1.0)
    return np.where(inside, 60.0 * s * (1.0 - s) * (1.0 - 2.0 * s), 0.0)


# max of S' on [0, 1], attained at s = 1/2
SMOOTHSTEP_SLOPE = 1.875


@dataclass(frozen=True)
class Bump:
    """C² bump supported on [left, right], equal to 1 on [left + width, right - width]"""
    left: float
    right: float
    width: float
    open_left: bool = False
    open_right: bool = False

    def __post_init__(self):
        if not self.width > 0:
            raise DomainError(f"Smoothing width must be positive, got {self.width}")
        if not self.right > self.left:
            raise DomainError(f"Empty cover element [{self.left}, {self.right}]")

    def evaluate(self, x):
        """(η, η', η'') at the points x"""
        x = np.asarray(x, dtype=float)
        if self.open_left:
            lv, ld, ldd = np.ones_like(x), np.zeros_like(x), np.zeros_like(x)
        else:
            s = (x - self.left) / self.width
            lv, ld, ldd = smoothstep(s), smoothstep_d1(s) / self.width, smoothstep_d2(s) / self.width ** 2
        if self.open_right:
            rv, rd, rdd = np.ones_like(x), np.zeros_like(x), np.zeros_like(x)
        else:
            s = (self.right - x) / self.width
            rv, rd, rdd = smoothstep(s), -smoothstep_d1(s) / self.width, smoothstep_d2(s) / self.width ** 2
        return lv * rv, ld * rv + lv * rd, ldd * rv + 2.0 * ld * rd + lv * rdd


@dataclass
class PartitionOfUnity:
    """
    Sampled partition ψ_V on a grid.

    values: (k,) + grid.shape
    gradient: (k, d) + grid.shape
    second: (k,) + grid.shape, the trace of the Hessian Σ ∂ᵢ²ψ_V (Δψ_V = -second)
    """
    grid: object
    values: np.ndarray
    gradient: np.ndarray
    second: Optional[np.ndarray] = None
    supports: Optional[List[Tuple]] = None

    def __len__(self):
        return self.values.shape[0]

    def closure_defect(self):
        """max |Σψ² - 1| over the nodes"""
        return float(np.max(np.abs(np.sum(self.values ** 2, axis=0) - 1.0)))

    def cross_defect(self):
        """max |Σψ ∇ψ|, which vanishes because Σψ² is constant"""
        cross = np.einsum('k...,kd...->d...', self.values, self.gradient)
        return float(np.max(np.abs(cross)))

    def gradient_norm2(self):
        """|∇ψ_V|² per piece and node"""
        return np.sum(self.gradient ** 2, axis=1)

    def sup_gradient2(self, mask=None):
        """‖∇ψ_V‖²_∞ over the mask (default: every node), per piece"""
        norms = self.gradient_norm2()
        if mask is not None:
            norms = np.where(mask, norms, 0.0)
        return np.max(norms.reshape(len(self), -1), axis=1)

    def sup_laplacian2(self, mask=None):
        if self.second is None:
            return None
        values = self.second ** 2
        if mask is not None:
            values = np.where(mask, values, 0.0)
        return np.max(values.reshape(len(self), -1), axis=1)


def make_partition(grid, cover: Sequence[Tuple[float, float]], width):
    """
    Partition of unity subordinate to a cover of a 1-D grid by intervals.

    Elements reaching past an end of the grid are not cut off there.

    Raises:
        DomainError: a node is not covered
    """
    if not cover:
        raise DomainError("The cover is empty")
    x = grid.nodes
    bumps = [Bump(float(l), float(r), width, open_left=l <= grid.start, open_right=r >= grid.stop)
             for l, r in cover]
    data = [b.evaluate(x) for b in bumps]
    eta = np.array([d[0] for d in data])
    d1 = np.array([d[1] for d in data])
    d2 = np.array([d[2] for d in data])

    energy = np.sum(eta ** 2, axis=0)
    uncovered = np.nonzero(energy <= 0.0)[0]
    if len(uncovered):
        node = x[uncovered[0]]
        raise DomainError(f"Cover leaves a gap at node x={node:.6g}")

    e1 = 2.0 * np.sum(eta * d1, axis=0)
    e2 = 2.0 * np.sum(d1 ** 2 + eta * d2, axis=0)
    root = np.sqrt(energy)
    psi = eta / root
    dpsi = d1 / root - 0.5 * eta * e1 / root ** 3
    d2psi = (d2 / root - d1 * e1 / root ** 3 - 0.5 * eta * e2 / root ** 3
             + 0.75 * eta * e1 ** 2 / root ** 5)
    part = PartitionOfUnity(grid, psi, dpsi[:, np.newaxis, :], d2psi, supports=list(cover))
    logger.debug(f"Partition with {len(cover)} pieces, closure defect {part.closure_defect():.2e}")
    return part


def tensor_partition(grid2d, px, py):
    """ψ_ij(x, y) = ψ_i(x) ψ_j(y) on a Grid2D"""
    if len(px.values[0]) != grid2d.shape[0] or len(py.values[0]) != grid2d.shape[1]:
        raise GridError("Factor partitions do not match the tensor grid")
    values, grads, seconds, supports = [], [], [], []
    for i in range(len(px)):
        for j in range(len(py)):
            a, da = px.values[i][:, None], px.gradient[i, 0][:, None]
            b, db = py.values[j][None, :], py.gradient[j, 0][None, :]
            values.append(a * b)
            grads.append(np.stack([da * b, a * db]))
            if px.second is not None and py.second is not None:
                seconds.append(px.second[i][:, None] * b + a * py.second[j][None, :])
            if px.supports and py.supports:
                supports.append((px.supports[i], py.supports[j]))
    second = np.array(seconds) if seconds else None
    return PartitionOfUnity(grid2d, np.array(values), np.array(grads), second, supports or None)


def random_cover(rng, start, stop, pieces, overlap):
    """Cover of [start, stop] by `pieces` intervals overlapping by at least `overlap`"""
    cuts = np.sort(rng.uniform(start + overlap, stop - overlap, size=pieces - 1))
    edges = np.concatenate([[start], cuts, [stop]])
    return [(edges[k] - overlap if k else start - 1.0,
             edges[k + 1] + overlap if k < pieces - 1 else stop + 1.0) for k in range(pieces)]
