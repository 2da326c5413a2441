"""Finite-difference eigenvalues of the radial softcore Coulomb operator.

    H = -d^2/dr^2 + (k-1)(k-3)/(4 r^2) - v/(r+1)

is discretized with the three-point stencil on a uniform grid with
Dirichlet ends at r_min > 0 and r_max.  Eigenvalues of the resulting
symmetric tridiagonal matrix come from Sturm-count bisection, so they are
deterministic and need no external eigensolver.  Accuracy is O(h^2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..errors import ContractViolation, InsufficientResolution

__all__ = [
    "FdGrid",
    "FdMatch",
    "potential",
    "fd_matrix",
    "sturm_count",
    "tridiagonal_eigenvalues",
    "fd_spectrum",
    "count_bound_states",
    "match_eigenvalue",
]

# points per local wavelength below which an eigenvalue is rejected
_MAX_H_K = 0.5


@dataclass(frozen=True)
class FdGrid:
    r_min: float
    r_max: float
    points: int

    def __post_init__(self):
        if not 0 < self.r_min < self.r_max:
            raise ContractViolation("need 0 < r_min < r_max")
        if self.points < 100:
            raise ContractViolation("need at least 100 grid points")

    @classmethod
    def standard(cls, r_max: float = 40.0, points: int = 4000) -> "FdGrid":
        # r_min far below h: the O(r_min) Dirichlet bias stays under the O(h^2) error
        return cls(1e-10 * r_max, r_max, points)

    @property
    def h(self) -> float:
        return (self.r_max - self.r_min) / (self.points - 1)

    def interior(self):
        h = self.h
        return [self.r_min + i * h for i in range(1, self.points - 1)]


def potential(r: float, v: float, k: int) -> float:
    return (k - 1) * (k - 3) / (4.0 * r * r) - v / (r + 1.0)


def fd_matrix(v: float, k: int, grid: FdGrid):
    """(diagonal, off-diagonal) of the discretized operator on interior points."""
    h2 = grid.h**2
    diag = [2.0 / h2 + potential(r, v, k) for r in grid.interior()]
    off = [-1.0 / h2] * (len(diag) - 1)
    return diag, off


def sturm_count(diag, off_sq, x: float) -> int:
    """Number of eigenvalues strictly below ``x`` (LDL^T negative pivots)."""
    count = 0
    d = 1.0
    tiny = 1e-300
    prev_sq = 0.0
    for i, a in enumerate(diag):
        d = a - x - (prev_sq / d if i else 0.0)
        if d == 0.0:
            d = -tiny
        if d < 0:
            count += 1
        prev_sq = off_sq[i] if i < len(off_sq) else 0.0
    return count


def tridiagonal_eigenvalues(diag, off, indices, abs_tol: float = 1e-13) -> list:
    """Eigenvalues with the given 0-based ascending indices, by bisection."""
    n = len(diag)
    if any(i < 0 or i >= n for i in indices):
        raise ContractViolation("eigenvalue index out of range")
    off_sq = [o * o for o in off]
    radius = [
        (abs(off[i - 1]) if i > 0 else 0.0) + (abs(off[i]) if i < n - 1 else 0.0) for i in range(n)
    ]
    lo0 = min(a - r for a, r in zip(diag, radius))
    hi0 = max(a + r for a, r in zip(diag, radius))
    out = []
    for idx in indices:
        lo, hi = lo0, hi0
        while hi - lo > abs_tol * max(1.0, abs(lo), abs(hi)):
            mid = 0.5 * (lo + hi)
            if mid == lo or mid == hi:
                break
            if sturm_count(diag, off_sq, mid) > idx:
                hi = mid
            else:
                lo = mid
        out.append(0.5 * (lo + hi))
    return out


def fd_spectrum(v: float, k: int, grid: FdGrid, count: int) -> list:
    """Lowest ``count`` eigenvalues of the discretized radial operator.

    Raises :class:`InsufficientResolution` when a requested bound state has
    a local wavenumber sqrt(|E|) too large for the spacing (h sqrt|E| > 0.5).
    """
    if v <= 0:
        raise ContractViolation("coupling v must be positive")
    if k < 2:
        raise ContractViolation("k must be at least 2")
    if count < 1:
        raise ContractViolation("count must be positive")
    diag, off = fd_matrix(v, k, grid)
    if count > len(diag):
        raise InsufficientResolution(f"{count} eigenvalues requested from {len(diag)} unknowns")
    eigs = tridiagonal_eigenvalues(diag, off, list(range(count)))
    for i, e in enumerate(eigs):
        if e < 0 and grid.h * math.sqrt(-e) > _MAX_H_K:
            raise InsufficientResolution(
                f"eigenvalue {i} = {e:.6g} needs h < {_MAX_H_K / math.sqrt(-e):.3g}, grid has h = {grid.h:.3g}"
            )
    return eigs


def count_bound_states(v: float, k: int, grid: FdGrid) -> int:
    diag, off = fd_matrix(v, k, grid)
    return sturm_count(diag, [o * o for o in off], 0.0)


@dataclass(frozen=True)
class FdMatch:
    index: int
    value: float
    gap: float


def match_eigenvalue(target: float, eigs) -> FdMatch:
    """Nearest eigenvalue to ``target``; the index is reported, not assumed."""
    if not eigs:
        raise ContractViolation("no eigenvalues to match")
    idx = min(range(len(eigs)), key=lambda i: abs(eigs[i] - target))
    return FdMatch(idx, eigs[idx], abs(eigs[idx] - target))
