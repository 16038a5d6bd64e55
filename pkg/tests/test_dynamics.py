"""Integrator and sampler tests.

Oracles: the naive double-loop evaluation of the coupled flow, matrix
exponentials for the uncoupled case, and the classical RK4 error-ratio
envelope for step halving.
"""

from __future__ import annotations

import math

import numpy as np
import pytest

from spheresync import (
    FrequencyEnsemble,
    OscillatorSystem,
    StepTooLarge,
    compute_w,
    expm_skew,
    integrate,
    planar_frequency,
    rhs,
    sample_hemisphere,
    sample_sphere,
)
from spheresync.presets import PRESETS, directed_cycle


def _naive_rhs(omegas, adjacency, k, states):
    """Double-loop transcription of the flow, kept deliberately dumb."""
    m, n = states.shape
    out = np.zeros_like(states)
    for i in range(m):
        out[i] = omegas[i] @ states[i]
        for j in range(m):
            coupling = states[j] - (states[i] @ states[j]) * states[i]
            out[i] += k * adjacency[i, j] * coupling
    return out


def _preset_system(name, k=None, seed=1):
    preset = PRESETS[name]
    ens = preset.ensemble()
    verdict = compute_w(ens)
    if verdict.synchronizable:
        state = sample_hemisphere(verdict.p, preset.m, 0.05, seed)
    else:
        state = sample_sphere(preset.n, preset.m, seed)
    return OscillatorSystem(
        ens=ens,
        g=preset.digraph(),
        k=preset.k if k is None else k,
        state=state,
    )


def test_rhs_uncoupled_is_pure_rotation():
    sys_ = _preset_system("paper-n4", k=0.0)
    out = rhs(sys_)
    for i, omega in enumerate(sys_.ens.arrays()):
        assert np.allclose(out[i], omega @ sys_.state[i], atol=1e-15)


def test_rhs_coupling_vanishes_at_coherent_state():
    # all oscillators share one state: every coupling difference cancels
    preset = PRESETS["paper-n4"]
    verdict = compute_w(preset.ensemble())
    p = verdict.p
    state = np.tile(p, (preset.m, 1))
    sys_ = OscillatorSystem(
        ens=preset.ensemble(), g=preset.digraph(), k=0.9, state=state
    )
    out = rhs(sys_)
    for i, omega in enumerate(sys_.ens.arrays()):
        assert np.allclose(out[i], omega @ p, atol=1e-14)


def test_rhs_matches_naive_double_loop():
    sys_ = _preset_system("paper-n4", k=0.9, seed=5)
    expected = _naive_rhs(
        sys_.ens.arrays(), sys_.g.adjacency, sys_.k, sys_.state
    )
    assert np.abs(rhs(sys_) - expected).max() <= 1e-14


def test_rhs_is_tangent_to_the_sphere():
    for name in ("paper-n3", "paper-n4", "paper-n5"):
        sys_ = _preset_system(name, seed=9)
        dots = np.sum(sys_.state * rhs(sys_), axis=1)
        assert np.abs(dots).max() <= 1e-12


def test_integrate_planar_quarter_turn():
    # uncoupled planar rotation: r(0) = e1 ends at e2 after a quarter period
    ens = FrequencyEnsemble((planar_frequency(1.0), planar_frequency(1.0)))
    state = np.array([[1.0, 0.0], [1.0, 0.0]])
    sys_ = OscillatorSystem(ens=ens, g=directed_cycle(2), k=0.0, state=state)
    t_end = math.pi / 2
    n_steps = 1571  # dt ~ 1e-3 with n_steps * dt = t_end exactly
    traj = integrate(sys_, t_end / n_steps, t_end, stride=n_steps)
    assert np.linalg.norm(traj.states[-1, 0] - np.array([0.0, 1.0])) <= 1e-8


@pytest.mark.parametrize("name", ["paper-n3", "paper-n4", "paper-n5"])
def test_uncoupled_trajectories_match_matrix_exponentials(name):
    sys_ = _preset_system(name, k=0.0, seed=2)
    traj = integrate(sys_, 1e-3, 5.0, stride=5000)
    for i, sm in enumerate(sys_.ens.matrices):
        expected = expm_skew(sm, 5.0) @ sys_.state[i]
        assert np.linalg.norm(traj.states[-1, i] - expected) <= 1e-6


def test_integrate_rejects_step_too_large():
    sys_ = _preset_system("paper-n5", k=0.9)
    with pytest.raises(StepTooLarge):
        integrate(sys_, 0.1, 1.0)


def test_integrate_validates_stride_and_horizon():
    sys_ = _preset_system("paper-n4")
    with pytest.raises(ValueError):
        integrate(sys_, 1e-3, 1.0, stride=3)  # 1000 steps not divisible by 3
    with pytest.raises(ValueError):
        integrate(sys_, -1e-3, 1.0)
    with pytest.raises(ValueError):
        integrate(sys_, 1e-3, -1.0)


def test_trajectory_recording_grid():
    sys_ = _preset_system("paper-n4")
    traj = integrate(sys_, 1e-3, 0.1, stride=10)
    assert traj.times.shape == (11,)
    assert np.allclose(np.diff(traj.times), 1e-2)
    assert traj.step == 1e-3
    norms = np.linalg.norm(traj.states, axis=2)
    assert np.abs(norms - 1.0).max() <= 1e-9


def test_norm_drift_stays_tiny_per_step():
    sys_ = _preset_system("paper-n4", k=0.9)
    traj = integrate(sys_, 1e-3, 10.0, stride=100)
    assert traj.max_norm_drift <= 1e-8


def test_rk4_step_halving_error_ratio():
    # smooth regime: halving dt should shrink the endpoint error ~16x
    sys_ = _preset_system("paper-n4", k=0.9, seed=3)
    ends = {}
    for dt, stride in ((0.02, 50), (0.01, 100), (0.005, 200)):
        traj = integrate(sys_, dt, 1.0, stride=stride)
        ends[dt] = traj.states[-1]
    coarse = np.linalg.norm(ends[0.02] - ends[0.01])
    fine = np.linalg.norm(ends[0.01] - ends[0.005])
    ratio = coarse / fine
    assert 12.0 <= ratio <= 20.0


def test_companion_axis_follows_the_reference_rotation():
    preset = PRESETS["paper-n4"]
    verdict = compute_w(preset.ensemble())
    sys_ = _preset_system("paper-n4", k=0.9, seed=4)
    traj = integrate(sys_, 1e-3, 10.0, stride=100, eta0=verdict.p)
    assert traj.etas is not None
    for idx in (10, 50, 100):
        t = traj.times[idx]
        expected = expm_skew(preset.ensemble().matrices[0], t) @ verdict.p
        assert np.linalg.norm(traj.etas[idx] - expected) <= 1e-6


def test_hemisphere_alignment_is_nondecreasing():
    # Admissible start: the minimum alignment against the rotated axis never
    # drops (up to integrator slack).
    preset = PRESETS["paper-n4"]
    verdict = compute_w(preset.ensemble())
    sys_ = _preset_system("paper-n4", k=0.9, seed=6)
    traj = integrate(sys_, 1e-3, 10.0, stride=10, eta0=verdict.p)
    h_min = np.einsum("tmn,tn->tm", traj.states, traj.etas).min(axis=1)
    drops = h_min[:-1] - h_min[1:]
    assert drops.max(initial=0.0) <= 1e-6


def test_sample_hemisphere_is_deterministic_and_in_cap():
    p = np.zeros(4)
    p[1] = 1.0
    a = sample_hemisphere(p, 5, 0.05, seed=12)
    b = sample_hemisphere(p, 5, 0.05, seed=12)
    assert np.array_equal(a, b)
    assert np.abs(np.linalg.norm(a, axis=1) - 1.0).max() <= 1e-12
    assert (a @ p).min() >= 0.05
    different = sample_hemisphere(p, 5, 0.05, seed=13)
    assert not np.array_equal(a, different)


def test_sample_hemisphere_tight_cap_hugs_the_axis():
    p = np.zeros(3)
    p[2] = 1.0
    samples = sample_hemisphere(p, 20, 0.999, seed=8)
    angles = np.degrees(np.arccos(np.clip(samples @ p, -1, 1)))
    assert angles.max() <= 2.6


def test_sample_hemisphere_validates_inputs():
    p = np.array([1.0, 0.0])
    with pytest.raises(ValueError):
        sample_hemisphere(p, 3, 0.0, seed=1)
    with pytest.raises(ValueError):
        sample_hemisphere(p, 3, 1.0, seed=1)
    with pytest.raises(ValueError):
        sample_hemisphere(np.array([2.0, 0.0]), 3, 0.5, seed=1)


def test_sample_sphere_unit_norms_and_determinism():
    a = sample_sphere(5, 7, seed=3)
    b = sample_sphere(5, 7, seed=3)
    assert np.array_equal(a, b)
    assert np.abs(np.linalg.norm(a, axis=1) - 1.0).max() <= 1e-12


def test_system_constructor_validates_shapes_and_norms():
    preset = PRESETS["paper-n4"]
    good = sample_sphere(4, 5, seed=1)
    with pytest.raises(ValueError):
        OscillatorSystem(
            ens=preset.ensemble(), g=preset.digraph(), k=-1.0, state=good
        )
    with pytest.raises(ValueError):
        OscillatorSystem(
            ens=preset.ensemble(), g=preset.digraph(), k=1.0, state=2 * good
        )
    with pytest.raises(ValueError):
        OscillatorSystem(
            ens=preset.ensemble(),
            g=directed_cycle(3),
            k=1.0,
            state=good,
        )
