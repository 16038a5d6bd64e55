"""The synchronizability subspace W and the sync/no-sync verdict.

W collects the unit directions on which all frequency matrices act
identically, in the strong sense that every power agrees.  The network can
reach complete phase synchronization from some hemisphere exactly when
dim(W) > 0, independent of the coupling gain; this module decides that.

Two equivalent characterizations are implemented:

* powers:   intersect ker(Om_i^l - Om_1^l) over l = 1..n, i = 2..m
* products: intersect ker((Om_i - Om_1) Om_1^s) over s = 0..n-1, i = 2..m

The products form needs powers of Om_1 only and is the default compute
path; the powers form serves as a cross-check.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import CharacterizationMismatch
from .linalg import (
    KERNEL_TOL,
    FloatArray,
    SkewMatrix,
    Subspace,
    kernel,
    span_distance,
)

# Span disagreement above this is treated as a numerical pathology.
SPAN_TOL = 1e-8

SHORTCUT_GENERAL = "general"
SHORTCUT_IDENTICAL = "identical"
SHORTCUT_PROPORTIONAL = "proportional"
SHORTCUT_COMMUTING = "commuting"


@dataclass(frozen=True)
class FrequencyEnsemble:
    """The family of per-oscillator frequency matrices Om_1 .. Om_m."""

    matrices: tuple[SkewMatrix, ...]

    def __post_init__(self) -> None:
        mats = tuple(self.matrices)
        if len(mats) < 2:
            raise ValueError("ensemble needs at least two oscillators")
        n = mats[0].n
        if any(sm.n != n for sm in mats):
            raise ValueError("all frequency matrices must share one dimension")
        object.__setattr__(self, "matrices", mats)

    @property
    def n(self) -> int:
        return self.matrices[0].n

    @property
    def m(self) -> int:
        return len(self.matrices)

    def arrays(self) -> list[FloatArray]:
        return [sm.entries for sm in self.matrices]


@dataclass(frozen=True)
class SyncVerdict:
    """Outcome of the subspace analysis.

    When synchronizable, p is a unit vector in W certifying an admissible
    hemisphere; otherwise witness describes why W is trivial.
    """

    w: Subspace
    dim_w: int
    synchronizable: bool
    shortcut: str
    p: Optional[FloatArray] = None
    witness: Optional[str] = None


@dataclass(frozen=True)
class RejectWitness:
    """Pair of oscillators whose frequency difference is invertible."""

    i: int
    j: int
    det: float


def stacked_power_differences(ens: FrequencyEnsemble) -> FloatArray:
    """Stack of Om_i^l - Om_1^l blocks, l = 1..n, i = 2..m."""
    mats = ens.arrays()
    powers = [m.copy() for m in mats]
    blocks = []
    for level in range(1, ens.n + 1):
        if level > 1:
            powers = [p @ m for p, m in zip(powers, mats)]
        blocks.extend(powers[i] - powers[0] for i in range(1, ens.m))
    return np.vstack(blocks)


def stacked_product_differences(ens: FrequencyEnsemble) -> FloatArray:
    """Stack of (Om_i - Om_1) Om_1^s blocks, s = 0..n-1, i = 2..m."""
    mats = ens.arrays()
    diffs = [mats[i] - mats[0] for i in range(1, ens.m)]
    power = np.eye(ens.n)
    blocks = []
    for s in range(ens.n):
        if s > 0:
            power = power @ mats[0]
        blocks.extend(d @ power for d in diffs)
    return np.vstack(blocks)


def compute_w_powers(ens: FrequencyEnsemble, tol: float = KERNEL_TOL) -> Subspace:
    """W via the power characterization (one kernel of the stacked blocks)."""
    return kernel(stacked_power_differences(ens), tol)


def compute_w_products(ens: FrequencyEnsemble, tol: float = KERNEL_TOL) -> Subspace:
    """W via the product characterization; equals compute_w_powers up to span."""
    return kernel(stacked_product_differences(ens), tol)


def _certificate_vector(w: Subspace) -> FloatArray:
    """First basis column, sign-fixed so its largest-magnitude entry is positive."""
    p = w.basis[:, 0].copy()
    if p[np.argmax(np.abs(p))] < 0:
        p = -p
    return p


def _detect_identical(mats: list[FloatArray], scale: float) -> bool:
    return all(np.abs(m - mats[0]).max() <= 1e-12 * scale for m in mats[1:])


def _detect_proportional(mats: list[FloatArray]) -> bool:
    """Om_i = l_i * Om_1 for all i, with the ratio fit by least squares."""
    ref = mats[0]
    denom = float(np.sum(ref * ref))
    if denom == 0.0:
        return False
    tol = 1e-10 * max(1.0, np.sqrt(denom))
    for m in mats[1:]:
        ratio = float(np.sum(m * ref)) / denom
        if np.abs(m - ratio * ref).max() > tol:
            return False
    return True


def _detect_commuting(mats: list[FloatArray], scale: float) -> bool:
    ref = mats[0]
    tol = 1e-10 * max(1.0, scale) ** 2
    return all(np.abs(m @ ref - ref @ m).max() <= tol for m in mats[1:])


def compute_w(ens: FrequencyEnsemble, tol: float = KERNEL_TOL) -> SyncVerdict:
    """Decide synchronizability: dim(W) > 0 iff a sync hemisphere exists.

    Special structure is detected first (identical, proportional, commuting
    with Om_1) and resolved by the corresponding closed-form kernel; the
    general path computes the product characterization and cross-checks it
    against the power characterization.
    """
    mats = ens.arrays()
    scale = max(np.abs(m).max() for m in mats)

    if _detect_identical(mats, scale):
        w = Subspace(np.eye(ens.n))
        shortcut = SHORTCUT_IDENTICAL
    elif _detect_proportional(mats):
        w = kernel(mats[0], tol)
        shortcut = SHORTCUT_PROPORTIONAL
    elif _detect_commuting(mats, scale):
        w = kernel(np.vstack([m - mats[0] for m in mats[1:]]), tol)
        shortcut = SHORTCUT_COMMUTING
    else:
        w = compute_w_products(ens, tol)
        check = compute_w_powers(ens, tol)
        if w.dim != check.dim or span_distance(w, check) > SPAN_TOL:
            raise CharacterizationMismatch(
                "product and power characterizations disagree: "
                f"dims {w.dim} vs {check.dim}, "
                f"span distance {span_distance(w, check):g}"
            )
        shortcut = SHORTCUT_GENERAL

    if w.dim > 0:
        return SyncVerdict(
            w=w,
            dim_w=w.dim,
            synchronizable=True,
            shortcut=shortcut,
            p=_certificate_vector(w),
        )
    if shortcut == SHORTCUT_PROPORTIONAL:
        witness = "reference frequency matrix has trivial kernel"
    else:
        witness = f"rank of stacked differences = {ens.n}"
    return SyncVerdict(
        w=w,
        dim_w=0,
        synchronizable=False,
        shortcut=shortcut,
        witness=witness,
    )


def quick_reject(ens: FrequencyEnsemble) -> Optional[RejectWitness]:
    """Cheap no-sync witness: a pair with det(Om_i - Om_j) != 0.

    Returns None when no pair qualifies; that does NOT imply the ensemble is
    synchronizable (odd n never yields a determinant witness, for one).
    """
    mats = ens.arrays()
    n = ens.n
    for i in range(ens.m):
        for j in range(i + 1, ens.m):
            diff = mats[i] - mats[j]
            norm = np.linalg.norm(diff, 2)
            if norm == 0.0:
                continue
            det = float(np.linalg.det(diff))
            if abs(det) > 1e-8 * norm**n:
                return RejectWitness(i=i, j=j, det=det)
    return None
