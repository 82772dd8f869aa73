"""L2 projections of grid functions onto monotone vectors.

The grid is uniform, so the projection onto non-decreasing vectors is the
unweighted isotonic regression, computed by pool-adjacent-violators with a
stack of blocks (sum, count).  A block is merged into its predecessor only
when the predecessor's mean is strictly larger.
"""
from __future__ import annotations

from dataclasses import dataclass

import numba
import numpy as np

from .errors import DomainError
from .quantile import _check_same_n, _values


@numba.njit(cache=True)
def _pava(y):
    n = y.shape[0]
    sums = np.empty(n)
    counts = np.empty(n, dtype=np.int64)
    starts = np.empty(n, dtype=np.int64)
    top = -1
    for i in range(n):
        top += 1
        sums[top] = y[i]
        counts[top] = 1
        starts[top] = i
        while top > 0 and sums[top - 1] * counts[top] > sums[top] * counts[top - 1]:
            sums[top - 1] += sums[top]
            counts[top - 1] += counts[top]
            top -= 1
    out = np.empty(n)
    bounds = np.empty((top + 1, 2), dtype=np.int64)
    for b in range(top + 1):
        s = starts[b]
        e = s + counts[b]
        m = sums[b] / counts[b]
        for j in range(s, e):
            out[j] = m
        bounds[b, 0] = s
        bounds[b, 1] = e
    # rounding in the block means can leave ulp-level descents between blocks
    for j in range(1, n):
        if out[j] < out[j - 1]:
            out[j] = out[j - 1]
    return out, bounds


@dataclass(frozen=True, eq=False)
class ProjectionResult:
    """Projected vector and its level sets as half-open index ranges [start, stop)."""

    projected: np.ndarray
    blocks: np.ndarray
    direction: str = "up"

    @property
    def n_blocks(self) -> int:
        return int(self.blocks.shape[0])

    def pooled(self, min_size: int = 2) -> np.ndarray:
        sizes = self.blocks[:, 1] - self.blocks[:, 0]
        return self.blocks[sizes >= min_size]


def _as_grid(f) -> np.ndarray:
    y = np.ascontiguousarray(_values(f), dtype=float)
    if y.ndim != 1:
        raise DomainError("grid functions are one dimensional")
    if not np.all(np.isfinite(y)):
        raise DomainError("grid function has non-finite entries")
    return y


def project_nondecreasing(f) -> ProjectionResult:
    y = _as_grid(f)
    out, blocks = _pava(y)
    return ProjectionResult(out, blocks, "up")


def project_nonincreasing(f) -> ProjectionResult:
    y = _as_grid(f)
    out, blocks = _pava(-y)
    return ProjectionResult(-out, blocks, "down")


def lambda_path(gamma, F, lam: float, direction: str = "up") -> ProjectionResult:
    """Project gamma + lam F^{-1} upward, or gamma - lam F^{-1} downward."""
    if lam < 0:
        raise DomainError("lambda must be non-negative")
    g = _values(gamma.weights if hasattr(gamma, "weights") else gamma)
    f = _values(F)
    _check_same_n(g, f)
    if direction == "up":
        return project_nondecreasing(g + lam * f)
    if direction == "down":
        return project_nonincreasing(g - lam * f)
    raise DomainError(f"direction must be 'up' or 'down', got {direction!r}")


def is_constant(v, rtol: float = 1e-12) -> bool:
    v = np.asarray(v)
    scale = max(1.0, float(np.abs(v).max()))
    return float(v.max() - v.min()) <= rtol * scale
