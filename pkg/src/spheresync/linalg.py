"""Skew-symmetric matrices, numerical subspaces and an exact rational kernel oracle.

Everything here is dense and small (ambient dimension <= 64 by design);
robustness is preferred over speed throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np
import scipy.linalg
from numpy.typing import NDArray

from .errors import DimensionMismatch

FloatArray = NDArray[np.float64]

# Relative singular-value cutoff separating "zero" from "nonzero".
KERNEL_TOL = 1e-10


@dataclass(frozen=True)
class SkewMatrix:
    """A real n x n skew-symmetric matrix, validated at construction."""

    entries: FloatArray

    def __post_init__(self) -> None:
        a = np.asarray(self.entries, dtype=np.float64)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError(f"matrix must be square, got shape {a.shape}")
        scale = np.abs(a).max()
        residual = np.abs(a + a.T).max()
        if residual > 1e-12 * scale:
            raise ValueError(
                f"matrix is not skew-symmetric: max|A + A^T| = {residual:g}"
            )
        object.__setattr__(self, "entries", a)

    @property
    def n(self) -> int:
        return self.entries.shape[0]


@dataclass(frozen=True)
class Subspace:
    """A linear subspace of R^n given by an n x d matrix with orthonormal columns.

    d = 0 (empty basis) is a first-class value: it represents the zero
    subspace, which is the no-synchronization verdict downstream.
    """

    basis: FloatArray

    def __post_init__(self) -> None:
        b = np.asarray(self.basis, dtype=np.float64)
        if b.ndim != 2:
            raise ValueError(f"basis must be 2-d, got shape {b.shape}")
        n, d = b.shape
        if d > n:
            raise ValueError(f"basis has more columns ({d}) than ambient dimension ({n})")
        gram = b.T @ b
        if d and np.abs(gram - np.eye(d)).max() > 1e-12:
            raise ValueError("basis columns are not orthonormal")
        object.__setattr__(self, "basis", b)

    @property
    def n(self) -> int:
        return self.basis.shape[0]

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    def projector(self) -> FloatArray:
        """Orthogonal projector onto the subspace (the zero matrix if dim 0)."""
        return self.basis @ self.basis.T

    def project(self, v: FloatArray) -> FloatArray:
        return self.basis @ (self.basis.T @ np.asarray(v, dtype=np.float64))

    def residual(self, v: FloatArray) -> float:
        """Distance from v to the subspace."""
        v = np.asarray(v, dtype=np.float64)
        return float(np.linalg.norm(v - self.project(v)))


def kernel(m: FloatArray, tol: float = KERNEL_TOL) -> Subspace:
    """Numerical kernel of a real r x n matrix via SVD.

    The kernel is spanned by right-singular vectors whose singular values
    satisfy sigma <= tol * sigma_max.  A zero matrix yields the full space.
    """
    a = np.atleast_2d(np.asarray(m, dtype=np.float64))
    r, n = a.shape
    _, s, vt = np.linalg.svd(a)
    sigma = np.zeros(n)
    sigma[: s.size] = s
    smax = sigma.max(initial=0.0)
    if smax == 0.0:
        return Subspace(np.eye(n))
    keep = sigma <= tol * smax
    return Subspace(vt[keep].T)


def intersect(a: Subspace, b: Subspace) -> Subspace:
    """Intersection of two subspaces of the same ambient space.

    Computed as the kernel of the stacked orthogonal-complement projectors
    [I - P_a; I - P_b]; a vector is annihilated by the stack exactly when it
    lies in both subspaces.
    """
    if a.n != b.n:
        raise DimensionMismatch(f"ambient dimensions differ: {a.n} vs {b.n}")
    eye = np.eye(a.n)
    stack = np.vstack([eye - a.projector(), eye - b.projector()])
    return kernel(stack)


def _rational_rref(rows: list[list[Fraction]]) -> tuple[list[int], list[int]]:
    """In-place reduced row echelon form; returns (pivot columns, free columns)."""
    n_rows = len(rows)
    n_cols = len(rows[0])
    pivot_cols: list[int] = []
    r = 0
    for c in range(n_cols):
        pivot_row = next((i for i in range(r, n_rows) if rows[i][c] != 0), None)
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        pivot = rows[r][c]
        rows[r] = [v / pivot for v in rows[r]]
        for i in range(n_rows):
            if i != r and rows[i][c] != 0:
                factor = rows[i][c]
                rows[i] = [vi - factor * vr for vi, vr in zip(rows[i], rows[r])]
        pivot_cols.append(c)
        r += 1
        if r == n_rows:
            break
    free_cols = [c for c in range(n_cols) if c not in pivot_cols]
    return pivot_cols, free_cols


def exact_kernel_oracle(m: FloatArray) -> Subspace:
    """Kernel of an integer matrix by exact rational Gaussian elimination.

    The dimension is exact; only the final orthonormalization of the basis
    happens in floating point.  Intended as the ground-truth oracle for the
    SVD-based kernel.
    """
    a = np.atleast_2d(np.asarray(m))
    if not np.all(a == np.rint(a)):
        raise ValueError("exact kernel oracle requires integer entries")
    a = np.rint(a).astype(np.int64)
    n_cols = a.shape[1]
    rows = [[Fraction(int(x)) for x in row] for row in a]
    pivot_cols, free_cols = _rational_rref(rows)
    if not free_cols:
        return Subspace(np.zeros((n_cols, 0)))
    vectors = []
    for free in free_cols:
        v = [Fraction(0)] * n_cols
        v[free] = Fraction(1)
        for row_idx, piv in enumerate(pivot_cols):
            v[piv] = -rows[row_idx][free]
        vectors.append([float(x) for x in v])
    raw = np.array(vectors, dtype=np.float64).T
    q, _ = np.linalg.qr(raw)
    return Subspace(q)


def expm_skew(omega: SkewMatrix, t: float) -> FloatArray:
    """Matrix exponential e^{Omega t}, an orthogonal rotation."""
    return scipy.linalg.expm(t * omega.entries)


def planar_frequency(omega: float) -> SkewMatrix:
    """The 2 x 2 rotation generator [[0, -w], [w, 0]]."""
    return SkewMatrix(np.array([[0.0, -omega], [omega, 0.0]]))


def principal_angles(a: Subspace, b: Subspace) -> FloatArray:
    """Principal angles (radians) between two subspaces, ascending.

    Uses the sine formulation for small angles (scipy), so angles between
    numerically identical spans come out near machine epsilon instead of
    the sqrt(eps) noise floor of the plain arccos method.
    """
    if a.n != b.n:
        raise DimensionMismatch(f"ambient dimensions differ: {a.n} vs {b.n}")
    if a.dim == 0 or b.dim == 0:
        return np.zeros(0)
    return np.sort(scipy.linalg.subspace_angles(a.basis, b.basis))


def span_distance(a: Subspace, b: Subspace) -> float:
    """Frobenius distance between the orthogonal projectors of two subspaces."""
    if a.n != b.n:
        raise DimensionMismatch(f"ambient dimensions differ: {a.n} vs {b.n}")
    return float(np.linalg.norm(a.projector() - b.projector()))


def spans_equal(a: Subspace, b: Subspace, angle_tol: float = 1e-8) -> bool:
    """True when both subspaces have the same dimension and span."""
    if a.dim != b.dim:
        return False
    if a.dim == 0:
        return True
    return float(principal_angles(a, b).max()) <= angle_tol
