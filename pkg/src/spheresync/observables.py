"""Certificate monitors: alignment functions, the Lyapunov descent pair,
synchronization diameter and distance to the target subspace.

The monitors only report; the guarantees they track (nondecreasing minimum
alignment, nonincreasing V) hold on runs started inside an admissible
hemisphere, and the tests assert them there with a slack absorbing
integrator error.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch
from .graph import Digraph
from .linalg import FloatArray, Subspace
from .dynamics import Trajectory

# Slack absorbing integrator error in the monotonicity checks; scales
# linearly with the integration step.
MONOTONICITY_SLACK = 1e-6


@dataclass(frozen=True)
class CertificateTrace:
    """Per-instant certificate values along one trajectory."""

    times: FloatArray
    h_min: FloatArray
    v: FloatArray
    v_dot: FloatArray
    diameter: FloatArray
    dist_w: FloatArray


def h_values(snapshot: FloatArray, eta: FloatArray) -> FloatArray:
    """Alignments h_i = eta . r_i, each in [-1, 1]."""
    return np.asarray(snapshot, dtype=np.float64) @ np.asarray(eta, dtype=np.float64)


def lyapunov(snapshot: FloatArray, eta: FloatArray, beta: FloatArray) -> float:
    """V = -sum_i beta_i (eta . r_i); equals -1 exactly at full alignment."""
    return float(-(np.asarray(beta, dtype=np.float64) @ h_values(snapshot, eta)))


def lyapunov_rate(
    snapshot: FloatArray,
    eta: FloatArray,
    beta: FloatArray,
    g: Digraph,
    k: float,
) -> float:
    """Analytic dV/dt = -k sum_ij a_ij beta_i (1 - r_i . r_j) h_i.

    Nonpositive whenever every h_i >= 0, which is exactly the admissible
    region the hemisphere condition keeps the flow inside.
    """
    r = np.asarray(snapshot, dtype=np.float64)
    h = h_values(r, eta)
    gram = r @ r.T
    row = np.sum(g.adjacency * (1.0 - gram), axis=1)
    return float(-k * np.sum(np.asarray(beta) * h * row))


def diameter(snapshot: FloatArray) -> float:
    """Largest pairwise distance max_ij ||r_i - r_j||."""
    r = np.asarray(snapshot, dtype=np.float64)
    diff = r[:, None, :] - r[None, :, :]
    return float(np.sqrt(np.sum(diff * diff, axis=2).max()))


def distance_to_w(snapshot: FloatArray, w: Subspace) -> float:
    """max_i ||r_i - P_W r_i||.

    For dim(W) = 0 the projector is zero and the value is exactly 1 on unit
    states; callers flag that case as advisory rather than erroring so that
    no-sync runs stay plottable.
    """
    r = np.asarray(snapshot, dtype=np.float64)
    if r.shape[1] != w.n:
        raise DimensionMismatch(
            f"snapshot dimension {r.shape[1]} vs subspace ambient {w.n}"
        )
    residual = r - r @ w.projector()
    return float(np.linalg.norm(residual, axis=1).max())


def certificate_trace(
    traj: Trajectory,
    w: Subspace,
    beta: FloatArray,
    g: Digraph,
    k: float,
) -> CertificateTrace:
    """Evaluate all monitors on every recorded instant of a trajectory.

    The trajectory must carry the companion axis (integrate with eta0).
    """
    if traj.etas is None:
        raise ValueError("trajectory has no companion axis; integrate with eta0")
    states = traj.states  # (T, m, n)
    etas = traj.etas  # (T, n)
    beta = np.asarray(beta, dtype=np.float64)

    h = np.einsum("tmn,tn->tm", states, etas)
    h_min = h.min(axis=1)
    v = -(h @ beta)

    gram = np.einsum("tin,tjn->tij", states, states)
    coupling_row = np.einsum("ij,tij->ti", g.adjacency, 1.0 - gram)
    v_dot = -k * np.sum(beta * h * coupling_row, axis=1)

    sq_norms = np.einsum("tmn,tmn->tm", states, states)
    pair_sq = sq_norms[:, :, None] + sq_norms[:, None, :] - 2.0 * gram
    diam = np.sqrt(np.clip(pair_sq.max(axis=(1, 2)), 0.0, None))

    residual = states - states @ w.projector()
    dist = np.sqrt(np.einsum("tmn,tmn->tm", residual, residual)).max(axis=1)

    return CertificateTrace(
        times=traj.times,
        h_min=h_min,
        v=v,
        v_dot=v_dot,
        diameter=diam,
        dist_w=dist,
    )


def count_decreases(values: FloatArray, slack: float = MONOTONICITY_SLACK) -> int:
    """Adjacent-sample decreases beyond slack (monotone-up violation count)."""
    values = np.asarray(values, dtype=np.float64)
    return int(np.sum(values[1:] < values[:-1] - slack))


def count_increases(values: FloatArray, slack: float = MONOTONICITY_SLACK) -> int:
    """Adjacent-sample increases beyond slack (monotone-down violation count)."""
    values = np.asarray(values, dtype=np.float64)
    return int(np.sum(values[1:] > values[:-1] + slack))
