"""Sphere-constrained integration of the coupled oscillator flow.

State: m unit vectors r_1..r_m in R^n obeying

    dr_i/dt = Om_i r_i + k * sum_j a_ij (r_j - (r_i . r_j) r_i)

The drift is skew and the coupling is tangential, so the flow conserves
every ||r_i|| exactly; the integrator renormalizes after each step and
treats any correction beyond a safety bound as a step-size failure rather
than silently projecting large errors away.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import StepTooLarge
from .graph import Digraph
from .linalg import FloatArray
from .wspace import FrequencyEnsemble

# Per-step renormalization correction above this aborts the run.
MAX_STEP_DRIFT = 1e-6

# Unit-norm slack tolerated on states handed to the constructor.
STATE_NORM_TOL = 1e-9


@dataclass(frozen=True)
class OscillatorSystem:
    """Frequency ensemble + coupling digraph + gain + current state."""

    ens: FrequencyEnsemble
    g: Digraph
    k: float
    state: FloatArray

    def __post_init__(self) -> None:
        state = np.asarray(self.state, dtype=np.float64)
        if state.ndim != 2:
            raise ValueError(f"state must be (m, n), got shape {state.shape}")
        m, n = state.shape
        if n != self.ens.n:
            raise ValueError(
                f"state dimension {n} does not match ensemble dimension {self.ens.n}"
            )
        if m != self.ens.m or m != self.g.m:
            raise ValueError(
                f"oscillator count mismatch: state {m}, ensemble {self.ens.m}, "
                f"graph {self.g.m}"
            )
        if self.k < 0:
            raise ValueError("coupling gain k must be nonnegative")
        norms = np.linalg.norm(state, axis=1)
        if np.abs(norms - 1.0).max() > STATE_NORM_TOL:
            raise ValueError("every oscillator state must be a unit vector")
        object.__setattr__(self, "state", state)

    @property
    def m(self) -> int:
        return self.state.shape[0]

    @property
    def n(self) -> int:
        return self.state.shape[1]


@dataclass(frozen=True)
class Trajectory:
    """Recorded snapshots of an integration run.

    etas carries the companion axis evolving by d(eta)/dt = Om_1 eta when
    the run was started with one (certificate monitoring needs it).
    max_norm_drift is the worst pre-renormalization norm error seen on any
    single step.
    """

    times: FloatArray
    states: FloatArray  # (T, m, n)
    step: float
    etas: Optional[FloatArray] = None  # (T, n)
    max_norm_drift: float = 0.0


def rhs(sys: OscillatorSystem) -> FloatArray:
    """Right-hand side of the flow at the system's current state, shape (m, n).

    Tangency holds row by row: r_i . (rhs)_i = 0 up to rounding.
    """
    r = sys.state
    omegas = np.stack(sys.ens.arrays())
    drift = np.einsum("ijk,ik->ij", omegas, r)
    if sys.k != 0.0:
        g = sys.g.adjacency @ r
        drift = drift + sys.k * (g - np.sum(r * g, axis=1, keepdims=True) * r)
    return drift


def integrate(
    sys: OscillatorSystem,
    dt: float,
    t_end: float,
    stride: int = 1,
    eta0: Optional[FloatArray] = None,
) -> Trajectory:
    """Classical fixed-step RK4 with post-step renormalization.

    Snapshots are recorded every `stride` steps (t = 0 included), so the
    step count t_end/dt must be a multiple of stride.  Raises StepTooLarge
    when a renormalization correction exceeds MAX_STEP_DRIFT, which signals
    that dt is too coarse for the given gains.
    """
    if dt <= 0:
        raise ValueError("dt must be positive")
    if t_end < 0:
        raise ValueError("t_end must be nonnegative")
    if stride < 1:
        raise ValueError("stride must be a positive integer")
    n_steps = int(round(t_end / dt))
    if abs(n_steps * dt - t_end) > 1e-9 * max(1.0, abs(t_end)):
        raise ValueError("t_end must be an integer multiple of dt")
    if n_steps % stride != 0:
        raise ValueError(f"step count {n_steps} is not a multiple of stride {stride}")

    m, n = sys.m, sys.n
    mn = m * n
    track_eta = eta0 is not None
    dim = mn + n if track_eta else mn

    # One block-diagonal drift matrix covers all oscillators (plus the
    # companion axis, driven by Om_1 alone).
    big = np.zeros((dim, dim))
    for i, omega in enumerate(sys.ens.arrays()):
        big[i * n : (i + 1) * n, i * n : (i + 1) * n] = omega
    if track_eta:
        big[mn:, mn:] = sys.ens.arrays()[0]

    y = np.empty(dim)
    y[:mn] = sys.state.ravel()
    if track_eta:
        eta = np.asarray(eta0, dtype=np.float64)
        if eta.shape != (n,):
            raise ValueError(f"eta0 must have shape ({n},)")
        nrm = np.linalg.norm(eta)
        if abs(nrm - 1.0) > STATE_NORM_TOL:
            raise ValueError("eta0 must be a unit vector")
        y[mn:] = eta

    a = sys.g.adjacency
    k = sys.k

    def deriv(vec: FloatArray) -> FloatArray:
        out = big @ vec
        if k != 0.0:
            r = vec[:mn].reshape(m, n)
            g = a @ r
            out[:mn] += (k * (g - np.sum(r * g, axis=1, keepdims=True) * r)).ravel()
        return out

    n_records = n_steps // stride + 1
    times = dt * stride * np.arange(n_records)
    states = np.empty((n_records, m, n))
    etas = np.empty((n_records, n)) if track_eta else None
    states[0] = y[:mn].reshape(m, n)
    if track_eta:
        etas[0] = y[mn:]

    half = 0.5 * dt
    sixth = dt / 6.0
    max_drift = 0.0
    record = 1
    for step in range(1, n_steps + 1):
        k1 = deriv(y)
        k2 = deriv(y + half * k1)
        k3 = deriv(y + half * k2)
        k4 = deriv(y + dt * k3)
        y = y + sixth * (k1 + 2.0 * (k2 + k3) + k4)

        r = y[:mn].reshape(m, n)
        norms = np.sqrt(np.sum(r * r, axis=1))
        drift = np.abs(norms - 1.0).max()
        if track_eta:
            eta_norm = np.linalg.norm(y[mn:])
            drift = max(drift, abs(eta_norm - 1.0))
        if drift > MAX_STEP_DRIFT:
            raise StepTooLarge(
                f"renormalization correction {drift:g} at step {step} exceeds "
                f"{MAX_STEP_DRIFT:g}; reduce dt"
            )
        max_drift = max(max_drift, drift)
        r /= norms[:, None]
        if track_eta:
            y[mn:] /= eta_norm

        if step % stride == 0:
            states[record] = r
            if track_eta:
                etas[record] = y[mn:]
            record += 1

    return Trajectory(
        times=times, states=states, step=dt, etas=etas, max_norm_drift=max_drift
    )


def sample_hemisphere(
    p: FloatArray, count: int, margin: float, seed: int
) -> FloatArray:
    """`count` unit vectors uniform on the cap {r : p . r >= margin}.

    Rejection sampling from the uniform sphere distribution; deterministic
    for a fixed seed.
    """
    p = np.asarray(p, dtype=np.float64)
    if abs(np.linalg.norm(p) - 1.0) > STATE_NORM_TOL:
        raise ValueError("p must be a unit vector")
    if not 0.0 < margin < 1.0:
        raise ValueError("margin must lie strictly between 0 and 1")
    rng = np.random.default_rng(seed)
    n = p.shape[0]
    out = np.empty((count, n))
    got = 0
    while got < count:
        v = rng.standard_normal(n)
        nrm = np.linalg.norm(v)
        if nrm < 1e-12:
            continue
        v /= nrm
        if p @ v >= margin:
            out[got] = v
            got += 1
    return out


def sample_sphere(n: int, count: int, seed: int) -> FloatArray:
    """`count` unit vectors uniform on the sphere in R^n, seeded."""
    rng = np.random.default_rng(seed)
    out = np.empty((count, n))
    got = 0
    while got < count:
        v = rng.standard_normal(n)
        nrm = np.linalg.norm(v)
        if nrm < 1e-12:
            continue
        out[got] = v / nrm
        got += 1
    return out
