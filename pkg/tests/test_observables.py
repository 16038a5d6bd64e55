"""Certificate monitor tests: alignments, the Lyapunov pair, diameter and
distance to the target subspace."""

from __future__ import annotations

import numpy as np
import pytest

from spheresync import (
    DimensionMismatch,
    OscillatorSystem,
    Subspace,
    certificate_trace,
    compute_w,
    diameter,
    distance_to_w,
    h_values,
    integrate,
    laplacian,
    left_null_vector,
    lyapunov,
    lyapunov_rate,
    sample_hemisphere,
)
from spheresync.observables import count_decreases, count_increases
from spheresync.presets import PRESETS


def _aligned_snapshot(eta, m):
    return np.tile(eta, (m, 1))


def _sync_run(name="paper-n4", t_end=5.0, stride=1, seed=1):
    preset = PRESETS[name]
    ens, g = preset.ensemble(), preset.digraph()
    verdict = compute_w(ens)
    state0 = sample_hemisphere(verdict.p, preset.m, 0.05, seed)
    sys_ = OscillatorSystem(ens=ens, g=g, k=preset.k, state=state0)
    traj = integrate(sys_, preset.dt, t_end, stride=stride, eta0=verdict.p)
    beta = left_null_vector(laplacian(g), True)
    trace = certificate_trace(traj, verdict.w, beta, g, preset.k)
    return preset, verdict, beta, traj, trace


def test_h_values_full_alignment():
    eta = np.array([0.0, 1.0, 0.0])
    assert np.allclose(h_values(_aligned_snapshot(eta, 4), eta), 1.0)


def test_h_values_orthogonal_states():
    eta = np.array([1.0, 0.0, 0.0])
    snapshot = np.array([[0.0, 1.0, 0.0], [0.0, 0.0, 1.0]])
    assert np.allclose(h_values(snapshot, eta), 0.0)


def test_h_values_pick_a_component_for_basis_axis():
    preset = PRESETS["paper-n5"]
    rng = np.random.default_rng(2)
    snapshot = rng.standard_normal((preset.m, preset.n))
    snapshot /= np.linalg.norm(snapshot, axis=1, keepdims=True)
    eta = np.zeros(5)
    eta[3] = 1.0
    assert np.allclose(h_values(snapshot, eta), snapshot[:, 3])


def test_lyapunov_extremes():
    eta = np.array([1.0, 0.0, 0.0, 0.0])
    beta = np.full(3, 1.0 / 3.0)
    assert lyapunov(_aligned_snapshot(eta, 3), eta, beta) == pytest.approx(-1.0)
    assert lyapunov(_aligned_snapshot(-eta, 3), eta, beta) == pytest.approx(1.0)


def test_lyapunov_matches_naive_summation():
    rng = np.random.default_rng(7)
    snapshot = rng.standard_normal((5, 4))
    snapshot /= np.linalg.norm(snapshot, axis=1, keepdims=True)
    eta = rng.standard_normal(4)
    eta /= np.linalg.norm(eta)
    beta = rng.uniform(0.1, 1.0, 5)
    beta /= beta.sum()
    naive = -sum(beta[i] * float(eta @ snapshot[i]) for i in range(5))
    assert abs(lyapunov(snapshot, eta, beta) - naive) <= 1e-14


def test_lyapunov_rate_zero_at_alignment_and_zero_gain():
    preset = PRESETS["paper-n4"]
    g = preset.digraph()
    beta = left_null_vector(laplacian(g), True)
    eta = np.array([1.0, 0.0, 0.0, 0.0])
    aligned = _aligned_snapshot(eta, 5)
    assert lyapunov_rate(aligned, eta, beta, g, 0.9) == pytest.approx(0.0, abs=1e-15)
    rng = np.random.default_rng(3)
    snapshot = rng.standard_normal((5, 4))
    snapshot /= np.linalg.norm(snapshot, axis=1, keepdims=True)
    assert lyapunov_rate(snapshot, eta, beta, g, 0.0) == 0.0


def test_lyapunov_rate_matches_naive_summation():
    preset = PRESETS["paper-n4"]
    g = preset.digraph()
    beta = left_null_vector(laplacian(g), True)
    rng = np.random.default_rng(9)
    snapshot = rng.standard_normal((5, 4))
    snapshot /= np.linalg.norm(snapshot, axis=1, keepdims=True)
    eta = rng.standard_normal(4)
    eta /= np.linalg.norm(eta)
    k = 0.9
    a = g.adjacency
    h = snapshot @ eta
    naive = 0.0
    for i in range(5):
        for j in range(5):
            naive -= k * a[i, j] * beta[i] * (1.0 - snapshot[i] @ snapshot[j]) * h[i]
    assert abs(lyapunov_rate(snapshot, eta, beta, g, k) - naive) <= 1e-14


def test_lyapunov_rate_agrees_with_finite_differences():
    _, _, _, _, trace = _sync_run(t_end=5.0)
    dt = 1e-3
    fd = (trace.v[2:] - trace.v[:-2]) / (2.0 * dt)
    assert np.abs(trace.v_dot[1:-1] - fd).max() <= 1e-5


def test_diameter_examples():
    eta = np.array([1.0, 0.0, 0.0])
    assert diameter(_aligned_snapshot(eta, 4)) == 0.0
    antipodal = np.array([[1.0, 0.0, 0.0], [-1.0, 0.0, 0.0]])
    assert diameter(antipodal) == pytest.approx(2.0)
    orthogonal_triple = np.eye(3)
    assert diameter(orthogonal_triple) == pytest.approx(np.sqrt(2.0))


def test_distance_to_w_members_and_trivial_subspace():
    w = Subspace(np.eye(4)[:, 2:])
    inside = np.array([[0.0, 0.0, 1.0, 0.0], [0.0, 0.0, 0.0, 1.0]])
    assert distance_to_w(inside, w) <= 1e-15
    zero = Subspace(np.zeros((4, 0)))
    assert distance_to_w(inside, zero) == pytest.approx(1.0)
    with pytest.raises(DimensionMismatch):
        distance_to_w(inside, Subspace(np.eye(3)))


def test_trace_values_recompute_pointwise():
    preset, verdict, beta, traj, trace = _sync_run(t_end=2.0, stride=10)
    g = preset.digraph()
    for idx in (0, 37, 200):
        snapshot = traj.states[idx]
        eta = traj.etas[idx]
        assert abs(trace.v[idx] - lyapunov(snapshot, eta, beta)) <= 1e-12
        assert (
            abs(trace.v_dot[idx] - lyapunov_rate(snapshot, eta, beta, g, preset.k))
            <= 1e-12
        )
        assert abs(trace.h_min[idx] - h_values(snapshot, eta).min()) <= 1e-12
        assert abs(trace.diameter[idx] - diameter(snapshot)) <= 1e-9
        assert abs(trace.dist_w[idx] - distance_to_w(snapshot, verdict.w)) <= 1e-12


def test_trace_monotonicity_on_admissible_run():
    _, _, _, _, trace = _sync_run(t_end=5.0)
    assert count_decreases(trace.h_min) == 0
    assert count_increases(trace.v) == 0
    assert trace.v_dot.max() <= 1e-12


def test_trace_requires_companion_axis():
    preset = PRESETS["paper-n4"]
    ens, g = preset.ensemble(), preset.digraph()
    verdict = compute_w(ens)
    state0 = sample_hemisphere(verdict.p, preset.m, 0.05, 1)
    sys_ = OscillatorSystem(ens=ens, g=g, k=preset.k, state=state0)
    traj = integrate(sys_, 1e-3, 0.1, stride=10)
    beta = left_null_vector(laplacian(g), True)
    with pytest.raises(ValueError):
        certificate_trace(traj, verdict.w, beta, g, preset.k)


def test_violation_counters():
    ascending = np.array([0.0, 0.1, 0.2, 0.3])
    assert count_decreases(ascending) == 0
    assert count_increases(ascending, slack=0.05) == 3
    dips = np.array([0.0, 0.1, 0.1 - 5e-7, 0.2, 0.1])
    assert count_decreases(dips, slack=1e-6) == 1
